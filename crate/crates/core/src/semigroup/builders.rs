use super::{FiniteSemigroup, SemigroupError};

impl FiniteSemigroup {
    /// `Z_n` under addition.
    pub fn cyclic_mod(n: usize) -> Result<Self, SemigroupError> {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Ok(Self::validate(table)?.with_label(format!("Z{n}")))
    }

    /// `a ⋆ b = a`.
    pub fn left_zero(n: usize) -> Result<Self, SemigroupError> {
        let table = (0..n).map(|a| vec![a; n]).collect();
        Ok(Self::validate(table)?.with_label(format!("left-zero({n})")))
    }

    /// `a ⋆ b = b`.
    pub fn right_zero(n: usize) -> Result<Self, SemigroupError> {
        let table = (0..n).map(|_| (0..n).collect()).collect();
        Ok(Self::validate(table)?.with_label(format!("right-zero({n})")))
    }

    /// Full transformation monoid on `k ≤ 3` points.
    ///
    /// A map `f` is encoded as `Σ f(i)·kⁱ`; `f ⋆ g` applies `f` first, then
    /// `g`, i.e. `x ↦ g(f(x))`.
    pub fn transformation_monoid(k: usize) -> Result<Self, SemigroupError> {
        if k == 0 || k > 3 {
            return Err(SemigroupError::Unsupported(format!(
                "transformation monoid on {k} points (supported: 1..=3)"
            )));
        }
        let order = k.pow(k as u32);
        let decode = |code: usize| -> Vec<usize> {
            let mut c = code;
            (0..k)
                .map(|_| {
                    let d = c % k;
                    c /= k;
                    d
                })
                .collect()
        };
        let encode = |map: &[usize]| -> usize { map.iter().rev().fold(0, |acc, &d| acc * k + d) };
        let maps: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let table = maps
            .iter()
            .map(|f| {
                maps.iter()
                    .map(|g| {
                        let composed: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        encode(&composed)
                    })
                    .collect()
            })
            .collect();
        Ok(Self::validate(table)?.with_label(format!("T{k}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_orders() {
        assert_eq!(FiniteSemigroup::cyclic_mod(6).unwrap().order(), 6);
        assert_eq!(
            FiniteSemigroup::transformation_monoid(1).unwrap().order(),
            1
        );
        assert_eq!(
            FiniteSemigroup::transformation_monoid(3).unwrap().order(),
            27
        );
        assert!(FiniteSemigroup::transformation_monoid(4).is_err());
    }

    #[test]
    fn transformation_composition_order() {
        let t2 = FiniteSemigroup::transformation_monoid(2).unwrap();
        // const0 = 0, swap = 1, id = 2, const1 = 3
        assert_eq!(t2.op(0, 1), 3); // const0 then swap = const1
        assert_eq!(t2.op(1, 0), 0); // swap then const0 = const0
        assert_eq!(t2.op(1, 1), 2);
    }

    #[test]
    fn zero_semigroups() {
        let rz = FiniteSemigroup::right_zero(3).unwrap();
        assert_eq!(rz.op(0, 2), 2);
        let lz = FiniteSemigroup::left_zero(3).unwrap();
        assert_eq!(lz.op(0, 2), 0);
    }
}
