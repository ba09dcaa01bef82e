import a.A;
import c.C;
import z.Z;

class T {}
