//! Double-double (~32 significant digit) complex arithmetic and a direct
//! evaluation of the susceptibility written against it. Shares no code with
//! the library's f64 implementation.

#![allow(dead_code)]

use raman_slab::susceptibility::AtomicParams;
use raman_slab::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
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
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, y.hi);
        let (t1, t2) = two_sum(self.lo, y.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, y.hi);
        let e = e + (self.hi * y.lo + self.lo * y.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, y: Dd) -> Dd {
        let q1 = self.hi / y.hi;
        let r = self - y * Dd::new(q1);
        let q2 = r.hi / y.hi;
        let r = r - y * Dd::new(q2);
        let q3 = r.hi / y.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn real(x: f64) -> Self {
        Cdd {
            re: Dd::new(x),
            im: Dd::ZERO,
        }
    }

    /// x − i·y
    pub fn rate_minus_i(x: f64, y: Dd) -> Self {
        Cdd { re: Dd::new(x), im: -y }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn conj(self) -> Self {
        Cdd {
            re: self.re,
            im: -self.im,
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, y: Cdd) -> Cdd {
        Cdd {
            re: self.re + y.re,
            im: self.im + y.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, y: Cdd) -> Cdd {
        Cdd {
            re: self.re - y.re,
            im: self.im - y.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, y: Cdd) -> Cdd {
        Cdd {
            re: self.re * y.re - self.im * y.im,
            im: self.re * y.im + self.im * y.re,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, y: Cdd) -> Cdd {
        let den = y.re * y.re + y.im * y.im;
        let num = self * y.conj();
        Cdd {
            re: num.re / den,
            im: num.im / den,
        }
    }
}

/// χ evaluated term by term in double-double arithmetic.
pub fn chi_oracle(delta_p: f64, p: &AtomicParams) -> Complex64 {
    let dp = Dd::new(delta_p);
    let dc = Dd::new(p.delta_c);
    let d1 = Dd::new(p.delta_1);
    let quarter_oc2 = Cdd {
        re: Dd::new(p.omega_c) * Dd::new(p.omega_c) / Dd::new(4.0),
        im: Dd::ZERO,
    };

    let f23 = Cdd::rate_minus_i(p.dephasing_23, dp);
    let f24 = Cdd::rate_minus_i(p.dephasing_24, dp - dc);
    let f41 = Cdd::rate_minus_i(p.dephasing_41, dp - d1 - dc);
    let f13 = Cdd::rate_minus_i(p.dephasing_13, dp - d1);
    let a = f23 * f24 + quarter_oc2;

    let pop_den =
        (Dd::new(p.decay_12) + Dd::new(p.decay_32)) * (Dd::new(p.dephasing_12) * Dd::new(p.dephasing_12) + d1 * d1);
    let first = Cdd::real(2.0) * Cdd::real(p.dephasing_21) * f24
        / Cdd {
            re: pop_den,
            im: Dd::ZERO,
        };

    let g21 = Cdd {
        re: Dd::new(p.dephasing_21),
        im: d1,
    };
    let second = (f24 * f41 - quarter_oc2) / (g21 * (f13 * f41 + quarter_oc2));

    let minus_i = Cdd {
        re: Dd::ZERO,
        im: Dd::new(-1.0),
    };
    let d = minus_i / a * (first + second);

    let prefactor = Dd::new(p.beta) * Dd::new(p.omega_1) * Dd::new(p.omega_1) / Dd::new(8.0);
    (d * Cdd {
        re: prefactor,
        im: Dd::ZERO,
    })
    .to_c64()
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}
