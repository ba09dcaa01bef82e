import bc "gitlab.com/txaty/bigcomplex"
func main() {
g1 := NewGaussianInt(7, 8) // 5 + 6i
div := new(GaussianInt).Div(g1, g1)
fmt.Println(div)
}
