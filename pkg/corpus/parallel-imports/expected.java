import a.A;
import c.C;
import d.D;
import z.Z;

class T {}
