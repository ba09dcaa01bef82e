def inc(): return x+1
# uses
a = inc()
b = inc()
c = inc()
