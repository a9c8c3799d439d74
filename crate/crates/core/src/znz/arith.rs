//! Scalar arithmetic in Z/mZ and small number-theoretic helpers.

use std::collections::BTreeMap;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid on signed integers: returns (g, x, y) with a·x + b·y = g ≥ 0.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

/// Unimodular 2×2 step (s, t, u, v) mod m with s·a + t·b = g, u·a + v·b = 0 and
/// s·v − t·u = 1. Keeps the first entry in place when it already divides the second.
pub fn unimodular_step(a: u64, b: u64, m: u64) -> (u64, u64, u64, u64) {
    let (a, b) = (a as i64, b as i64);
    if a != 0 && b % a == 0 {
        return (1, 0, reduce(-(b / a), m), 1);
    }
    let (g, s, t) = xgcd(a, b);
    (
        reduce(s, m),
        reduce(t, m),
        reduce(-(b / g), m),
        reduce(a / g, m),
    )
}

/// Reduces a signed integer into [0, m).
pub fn reduce(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = xgcd(a as i64, m as i64);
    if g == 1 {
        Some(reduce(x, m))
    } else {
        None
    }
}

/// Multiplicative order of `a` modulo `m`, or `None` if `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

/// The ideal generated by `a` in Z/m is generated by gcd(a, m); the zero ideal is reported as `m`.
pub fn ideal_generator(a: u64, m: u64) -> u64 {
    gcd(a % m, m)
}

/// Returns a unit `u` of Z/m with u·a ≡ gcd(a, m) (mod m).
pub fn normalizing_unit(a: u64, m: u64) -> u64 {
    let a = a % m;
    let g = gcd(a, m);
    if g == m {
        return 1;
    }
    let (ap, mp) = (a / g, m / g);
    let u0 = if mp == 1 {
        1
    } else {
        inv_mod(ap % mp, mp).expect("coprime after dividing gcd")
    };
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += mp;
    }
    u % m
}

pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Exact order of a finite abelian group kept as a prime factorization so that
/// large orders never overflow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupOrder {
    exponents: BTreeMap<u64, u32>,
}

impl GroupOrder {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn of(n: u64) -> Self {
        Self {
            exponents: factorize(n),
        }
    }

    pub fn mul(&self, other: &GroupOrder) -> GroupOrder {
        let mut out = self.clone();
        for (p, e) in &other.exponents {
            *out.exponents.entry(*p).or_insert(0) += e;
        }
        out
    }

    pub fn mul_n(&self, n: u64) -> GroupOrder {
        self.mul(&GroupOrder::of(n))
    }

    /// Quotient of orders; `None` if `other` does not divide `self`.
    pub fn div(&self, other: &GroupOrder) -> Option<GroupOrder> {
        let mut out = self.clone();
        for (p, e) in &other.exponents {
            let entry = out.exponents.get_mut(p)?;
            if *entry < *e {
                return None;
            }
            *entry -= e;
            if *entry == 0 {
                out.exponents.remove(p);
            }
        }
        Some(out)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    /// The order as an integer when it fits in 128 bits.
    pub fn value(&self) -> Option<u128> {
        let mut v: u128 = 1;
        for (p, e) in &self.exponents {
            for _ in 0..*e {
                v = v.checked_mul(*p as u128)?;
            }
        }
        Some(v)
    }
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => {
                let parts: Vec<String> = self
                    .exponents
                    .iter()
                    .map(|(p, e)| format!("{p}^{e}"))
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}
