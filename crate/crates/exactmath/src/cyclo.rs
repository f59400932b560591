use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::rat;
use crate::ExactError;

/// Element of Q[x]/(x^N - 1), with x standing for a primitive N-th root of
/// unity. Values are compared only after reduction modulo the N-th
/// cyclotomic polynomial, see [`Cyclo::reduced`].
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: usize,
    terms: BTreeMap<usize, BigRational>,
}

impl Cyclo {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "cyclotomic order must be positive");
        Cyclo { n, terms: BTreeMap::new() }
    }

    pub fn from_rational(n: usize, q: BigRational) -> Self {
        let mut c = Self::zero(n);
        c.add_term(0, q);
        c
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::from_rational(n, rat(k, 1))
    }

    /// x^k = e^{2 pi i k / N}.
    pub fn zeta(n: usize, k: i64) -> Self {
        let mut c = Self::zero(n);
        c.add_term(k.rem_euclid(n as i64) as usize, BigRational::one());
        c
    }

    /// Sum of roots of unity with integer multiplicities.
    pub fn sum_of_roots(n: usize, exps: &[(i64, i64)]) -> Self {
        let mut c = Self::zero(n);
        for &(k, m) in exps {
            c.add_term(k.rem_euclid(n as i64) as usize, rat(m, 1));
        }
        c
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn add_term(&mut self, k: usize, q: BigRational) {
        let e = self.terms.entry(k % self.n).or_insert_with(BigRational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&(k % self.n));
        }
    }

    /// Complex conjugate: x^k -> x^{-k}.
    pub fn conj(&self) -> Self {
        let mut c = Self::zero(self.n);
        for (k, q) in &self.terms {
            c.add_term((self.n - k) % self.n, q.clone());
        }
        c
    }

    /// Galois action x -> x^a (a coprime to N); used for power maps.
    pub fn galois(&self, a: i64) -> Self {
        let mut c = Self::zero(self.n);
        for (k, q) in &self.terms {
            c.add_term((*k as i64 * a).rem_euclid(self.n as i64) as usize, q.clone());
        }
        c
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut c = Self::zero(self.n);
        for (k, q) in &self.terms {
            c.add_term(*k, q * s);
        }
        c
    }

    /// Coefficients of the canonical representative modulo Phi_N
    /// (length phi(N)).
    pub fn reduced(&self) -> Vec<BigRational> {
        let phi = cyclotomic_poly(self.n);
        let deg = phi.len() - 1;
        let mut a = vec![BigRational::zero(); self.n.max(deg + 1)];
        for (k, q) in &self.terms {
            a[*k] += q;
        }
        for top in (deg..a.len()).rev() {
            if a[top].is_zero() {
                continue;
            }
            let c = a[top].clone();
            for (i, p) in phi.iter().enumerate() {
                if *p != 0 {
                    a[top - deg + i] -= &c * rat(*p, 1);
                }
            }
        }
        a.truncate(deg);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|q| q.is_zero())
    }

    /// The value as a rational number, or `NonRationalResult`.
    pub fn to_rational(&self) -> Result<BigRational, ExactError> {
        let r = self.reduced();
        if r.iter().skip(1).all(|q| q.is_zero()) {
            Ok(r.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            Err(ExactError::NonRationalResult(self.terms_string()))
        }
    }

    /// Projection onto the rational coordinate of the reduced form.
    pub fn rational_part(&self) -> Self {
        let r = self.reduced();
        Self::from_rational(self.n, r.first().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Numerical value (re, im); only for sanity checks and display.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, q) in &self.terms {
            let t = 2.0 * std::f64::consts::PI * (*k as f64) / (self.n as f64);
            let v = q.to_f64().unwrap_or(f64::NAN);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    fn terms_string(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(k, q)| format!("{q}*z{}^{k}", self.n)).collect();
        parts.join(" + ")
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "cyclotomic orders differ");
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && (self.clone() - o.clone()).is_zero()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        write!(f, "{}", self.terms_string())
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(mut self, o: Cyclo) -> Cyclo {
        self.check(&o);
        for (k, q) in o.terms {
            self.add_term(k, q);
        }
        self
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(&-BigRational::one())
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        self + (-o)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        self.check(o);
        let mut c = Cyclo::zero(self.n);
        for (a, p) in &self.terms {
            for (b, q) in &o.terms {
                c.add_term((a + b) % self.n, p * q);
            }
        }
        c
    }
}

/// Integer coefficients of Phi_n, constant term first.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_exact(&num, &cyclotomic_poly(d));
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0), "inexact cyclotomic division");
    q
}

/// Hermitian inner product (1/|G|) sum_c |c| chi(c) conj(psi(c)).
pub fn cyclo_inner(chi: &[Cyclo], psi: &[Cyclo], class_sizes: &[u64], order: u64) -> Result<BigRational, ExactError> {
    assert_eq!(chi.len(), psi.len(), "character lengths differ");
    assert_eq!(chi.len(), class_sizes.len(), "class size count differs");
    let n = chi.first().map(|c| c.order()).unwrap_or(1);
    let mut acc = Cyclo::zero(n);
    for ((a, b), s) in chi.iter().zip(psi).zip(class_sizes) {
        acc = acc + (a * &b.conj()).scale(&rat(*s as i64, 1));
    }
    Ok(acc.to_rational()? / rat(order as i64, 1))
}
