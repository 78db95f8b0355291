use crate::fplinalg::PrimeField;

/// GF(p^n) as GF(p)[x] modulo a monic irreducible polynomial; elements are
/// coefficient vectors in the basis `1, x, …, x^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    /// Coefficients of the modulus, constant term first; monic of length n+1.
    modulus: Vec<u32>,
}

impl ExtensionField {
    /// Uses the least monic irreducible polynomial of degree `n`, ordering
    /// candidates lexicographically by `(c_{n-1}, …, c_1, c_0)`.
    pub fn least_irreducible(base: PrimeField, n: usize) -> Self {
        assert!(n >= 1, "extension degree must be positive");
        let p = base.p() as u64;
        let count = p.pow(n as u32);
        for t in 0..count {
            let mut poly = digits(t, p, n);
            poly.push(1);
            if is_irreducible(base, &poly) {
                return ExtensionField {
                    base,
                    modulus: poly,
                };
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `x^e` reduced.
    pub fn monomial(&self, e: usize) -> Vec<u32> {
        let mut m = vec![0u32; e + 1];
        m[e] = 1;
        poly_rem(self.base, &m, &self.modulus)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        poly_rem(self.base, &poly_mul(self.base, a, b), &self.modulus)
    }
}

fn digits(mut t: u64, p: u64, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (t % p) as u32;
            t /= p;
            d
        })
        .collect()
}

fn poly_mul(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Remainder modulo a monic `m`, padded to `deg m` coefficients.
fn poly_rem(f: PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let n = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > n {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - n;
            for (i, &mi) in m[..n].iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, mi));
            }
        }
    }
    r.resize(n, 0);
    r
}

fn is_irreducible(f: PrimeField, poly: &[u32]) -> bool {
    let n = poly.len() - 1;
    let p = f.p() as u64;
    for k in 1..=n / 2 {
        for t in 0..p.pow(k as u32) {
            let mut divisor = digits(t, p, k);
            divisor.push(1);
            if poly_rem(f, poly, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        let f3 = PrimeField::new(3).unwrap();
        // x + 0 is irreducible of degree 1.
        assert_eq!(ExtensionField::least_irreducible(f3, 1).modulus(), &[0, 1]);
        // x^2 + 1: -1 is a non-square mod 3.
        assert_eq!(ExtensionField::least_irreducible(f3, 2).modulus(), &[1, 0, 1]);
        let f5 = PrimeField::new(5).unwrap();
        // x^2 + 2: 2 and 3 are the non-squares mod 5, so x^2+2 beats x^2+3.
        assert_eq!(ExtensionField::least_irreducible(f5, 2).modulus(), &[2, 0, 1]);
        // x^3 + 2 over GF(3) has root 1; x^3 + 2x + 1 is the least irreducible.
        assert_eq!(ExtensionField::least_irreducible(f3, 3).modulus(), &[1, 2, 0, 1]);
    }

    #[test]
    fn nonzero_elements_form_a_group() {
        let f3 = PrimeField::new(3).unwrap();
        let k = ExtensionField::least_irreducible(f3, 2);
        let elems: Vec<Vec<u32>> = (0..9).map(|t| digits(t, 3, 2)).collect();
        for a in elems.iter().skip(1) {
            let has_inverse = elems.iter().any(|b| k.mul(a, b) == vec![1, 0]);
            assert!(has_inverse, "{a:?}");
        }
        // x^2 = -1
        assert_eq!(k.monomial(2), vec![2, 0]);
    }
}
