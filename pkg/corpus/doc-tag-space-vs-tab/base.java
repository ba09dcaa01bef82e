/** comment
*/
public void f() {
}
