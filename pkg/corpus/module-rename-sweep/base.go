import bc "github.com/txaty/bigcomplex"
func main() {
g1 := NewGaussianInt(5, 6) // 5 + 6i
div := new(GaussianInt).Div(g1, g1)
fmt.Println(div)
}
