use super::poly::{self, Poly};
use crate::error::{bail, Result};

/// Largest field order for which log/antilog tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// A finite field `F_{p^d} = F_p[x]/(f)` for a monic primitive `f`.
///
/// Elements are plain `u32` values encoding the coordinate array
/// `(c_0, …, c_{d-1})` in base `p`: `value = Σ c_i p^i`, i.e. the element
/// `Σ c_i x^i`. Zero is `0` and one is `1`.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    degree: usize,
    order: u32,
    modulus: Poly,
    /// `exp[k] = x^k`, length `order - 1`.
    exp: Vec<u32>,
    /// `log[v]` for nonzero `v`; `log[0]` is unused.
    log: Vec<u32>,
}

impl std::fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn code_to_monic(code: u64, p: u32, d: usize) -> Poly {
    let mut f = Vec::with_capacity(d + 1);
    let mut c = code;
    for _ in 0..d {
        f.push((c % p as u64) as u32);
        c /= p as u64;
    }
    f.push(1);
    f
}

impl GaloisField {
    /// Builds `F_{p^d}` with the canonical modulus: the monic polynomial of
    /// degree `d` whose lower coefficients, read as a base-`p` number
    /// (`c_0` least significant), are smallest among all irreducible
    /// polynomials with a primitive root.
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        crate::padic::check_prime(p)?;
        if degree == 0 {
            bail!(Argument, "extension degree must be positive");
        }
        let order = (p as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            bail!(Capability, "field of order {p}^{degree} exceeds the table limit");
        }
        let p32 = p as u32;
        let order = order as u64;
        let factors = poly::prime_factors(order - 1);
        let x: Poly = vec![0, 1];
        for code in 0..order {
            let f = code_to_monic(code, p32, degree);
            if !poly::is_irreducible(&f, p32) {
                continue;
            }
            let unit = poly::pow_mod(&x, (order - 1) as u128, &f, p32) == vec![1];
            let primitive = unit && factors.iter().all(|&l| {
                let r = poly::pow_mod(&x, ((order - 1) / l) as u128, &f, p32);
                r != vec![1]
            });
            if primitive {
                return Self::with_modulus(p32, degree, f);
            }
        }
        bail!(Consistency, "no primitive polynomial of degree {degree} over F_{p}")
    }

    /// Builds the field for an explicit monic modulus. `x` must have full
    /// multiplicative order modulo `f`.
    pub(crate) fn with_modulus(p: u32, degree: usize, modulus: Poly) -> Result<Self> {
        if !poly::is_irreducible(&modulus, p) {
            bail!(Argument, "modulus {modulus:?} is reducible over F_{p}");
        }
        let order = (p as u64).pow(degree as u32) as u32;
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![0u32; order as usize];
        let mut cur: Poly = poly::rem(&[1], &modulus, p);
        let x: Poly = vec![0, 1];
        for k in 0..order - 1 {
            let v = encode(&cur, p);
            if k > 0 && v == 1 {
                bail!(Argument, "x is not primitive modulo {modulus:?}");
            }
            exp.push(v);
            log[v as usize] = k;
            cur = poly::mul_mod(&cur, &x, &modulus, p);
        }
        if encode(&cur, p) != 1 {
            bail!(Consistency, "x^(q-1) != 1 modulo {modulus:?}");
        }
        Ok(Self {
            p,
            degree,
            order,
            modulus,
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `q = p^d`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic defining polynomial, coefficients least-significant first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The class of `x`, a generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    pub fn coords(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree);
        let mut v = a;
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        coords
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c % self.p)
    }

    /// Embeds an integer via `F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.degree == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.degree {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.degree {
            let c = a % self.p;
            out += ((self.p - c) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        let k = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[if k >= n { k - n } else { k }]
    }

    /// Schoolbook multiplication through the defining polynomial; independent
    /// of the log tables.
    pub fn mul_by_polynomials(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul_mod(
            &self.coords(a),
            &self.coords(b),
            &self.modulus,
            self.p,
        );
        encode(&prod, self.p)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            bail!(Domain, "zero has no inverse");
        }
        let n = self.exp.len();
        Ok(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    /// `a^e` for any integer exponent; `0^0 = 1`, negative powers of zero
    /// are a domain error.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => bail!(Domain, "negative power of zero"),
            };
        }
        let n = self.exp.len() as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[k as usize])
    }

    /// `a^u` for a non-negative exponent; never fails.
    pub fn pow_u(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let k = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[k as usize]
    }

    /// `a^{p^k}`.
    pub fn frobenius(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let e = crate::padic::pow_mod(self.p as u64, k, n);
        self.pow_u(a, if e == 0 { n } else { e })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            bail!(Domain, "zero has no multiplicative order");
        }
        let n = self.exp.len() as u64;
        let l = self.log[a as usize] as u64;
        Ok(n / gcd(n, l))
    }

    /// The `F_p`-basis `1, x, …, x^{d-1}`.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.degree).map(|i| self.p.pow(i as u32)).collect()
    }

    /// Evaluates a polynomial with `F_p` coefficients at `a`.
    pub(crate) fn eval_prime_poly(&self, f: &[u32], a: u32) -> u32 {
        f.iter()
            .rev()
            .fold(0u32, |acc, &c| self.add(self.mul(acc, a), c % self.p))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn encode(f: &[u32], p: u32) -> u32 {
    f.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}
