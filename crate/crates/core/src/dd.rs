//! Complex double-double arithmetic (about 32 significant digits) built from
//! error-free transformations.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn add(self, o: Dd) -> Self {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    fn sub(self, o: Dd) -> Self {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ComplexDd {
    re: Dd,
    im: Dd,
}

impl ComplexDd {
    pub(crate) const ZERO: ComplexDd = ComplexDd { re: Dd::ZERO, im: Dd::ZERO };

    pub(crate) fn new(z: Complex64) -> Self {
        ComplexDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    pub(crate) fn neg(self) -> Self {
        ComplexDd { re: self.re.neg(), im: self.im.neg() }
    }

    pub(crate) fn add(self, o: ComplexDd) -> Self {
        ComplexDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub(crate) fn mul(self, o: ComplexDd) -> Self {
        ComplexDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub(crate) fn scale(self, s: f64) -> Self {
        let s = Dd::from_f64(s);
        ComplexDd { re: self.re.mul(s), im: self.im.mul(s) }
    }
}
