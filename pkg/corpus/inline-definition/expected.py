# helpers
# arithmetic shortcuts
# maintained by tooling
# uses
a = x+1
b = x+1
c = x+1
