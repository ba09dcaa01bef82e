/** comment
@since 0.4.0
*/
public void f() {
}
