use std::fmt;

use crate::error::GroupError;
use crate::limits::Limits;

/// `Z_{d_1} × ... × Z_{d_k}` with `d_1 | d_2 | ... | d_k` and every `d_i > 1`.
///
/// Elements are indexed in mixed radix with the last factor fastest; the
/// addition table is precomputed, so orders are capped at 64 to keep subsets
/// representable as `u64` masks.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: usize,
    coords: Vec<Vec<u64>>,
    add: Vec<u8>,
    /// For `g ≠ 0`: `(h, i)` with `g = h + e_i` and `h < g`.
    step: Vec<(u8, u8)>,
}

/// Largest order whose subsets fit in a `u64` mask.
pub const MASK_ORDER: u64 = 64;

impl AbelianGroup {
    pub fn new(factors: Vec<u64>, limits: &Limits) -> Result<AbelianGroup, GroupError> {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            return Err(GroupError::Parse(
                "invariant factors must be positive".into(),
            ));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupError::NotAChain(factors));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .unwrap_or(u64::MAX);
        let limit = limits.max_group_order.min(MASK_ORDER);
        if order > limit {
            return Err(GroupError::SizeLimitExceeded {
                what: "group order",
                size: order as u128,
                limit: limit as u128,
            });
        }
        let order = order as usize;
        let coords: Vec<Vec<u64>> = (0..order)
            .map(|mut g| {
                let mut c = vec![0u64; factors.len()];
                for (slot, &d) in c.iter_mut().zip(&factors).rev() {
                    *slot = (g as u64) % d;
                    g /= d as usize;
                }
                c
            })
            .collect();
        let encode = |c: &[u64]| {
            c.iter()
                .zip(&factors)
                .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
        };
        let mut add = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<u64> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&factors)
                    .map(|((&x, &y), &d)| (x + y) % d)
                    .collect();
                add[a * order + b] = encode(&sum) as u8;
            }
        }
        let step = (0..order)
            .map(|g| {
                if g == 0 {
                    return (0, 0);
                }
                let i = coords[g].iter().position(|&x| x != 0).expect("g ≠ 0");
                let mut c = coords[g].clone();
                c[i] -= 1;
                (encode(&c) as u8, i as u8)
            })
            .collect();
        Ok(AbelianGroup {
            factors,
            order,
            coords,
            add,
            step,
        })
    }

    /// Parses comma-separated invariant factors such as `4` or `2,4`.
    pub fn parse(text: &str, limits: &Limits) -> Result<AbelianGroup, GroupError> {
        let factors = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| GroupError::Parse(text.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        AbelianGroup::new(factors, limits)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self, g: usize) -> &[u64] {
        &self.coords[g]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    /// `k · g`.
    pub fn times(&self, k: u64, g: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, g))
    }

    /// The `i`-th standard generator.
    pub fn unit(&self, i: usize) -> usize {
        let stride: u64 = self.factors[i + 1..].iter().product();
        stride as usize
    }

    /// Elements `c` with `d · c = 0`, the admissible images of a generator
    /// of order `d`.
    pub fn killed_by(&self, d: u64) -> Vec<usize> {
        (0..self.order).filter(|&c| self.times(d, c) == 0).collect()
    }

    pub fn element_name(&self, g: usize) -> String {
        match self.factors.len() {
            0 => "0".into(),
            1 => self.coords[g][0].to_string(),
            _ => {
                let parts: Vec<String> = self.coords[g].iter().map(u64::to_string).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Every element's image under the homomorphism sending `e_i ↦ columns[i]`.
    pub fn evaluate(&self, columns: &[usize]) -> Vec<u8> {
        let mut out = vec![0u8; self.order];
        for g in 1..self.order {
            let (h, i) = self.step[g];
            out[g] = self.add(out[h as usize] as usize, columns[i as usize]) as u8;
        }
        out
    }

    /// Finite and semisimple as a Z-module: every invariant factor is
    /// square-free.
    pub fn is_semisimple(&self) -> bool {
        self.factors.iter().all(|&d| {
            let mut n = d;
            let mut p = 2;
            while p * p <= n {
                if n % (p * p) == 0 {
                    return false;
                }
                if n % p == 0 {
                    n /= p;
                }
                p += 1;
            }
            true
        })
    }

    /// `|End(M)|`, the number of admissible column choices.
    pub fn endomorphism_count(&self) -> u128 {
        self.factors
            .iter()
            .map(|&d| self.killed_by(d).len() as u128)
            .product()
    }

    /// Every group of order at most `max_order`, by invariant factors, sorted
    /// by order and then factors. The trivial group comes first.
    pub fn all_up_to(max_order: u64, limits: &Limits) -> Result<Vec<AbelianGroup>, GroupError> {
        fn chains(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
            out.push(prefix.clone());
            let start = prefix.last().copied().unwrap_or(2);
            let mut d = start;
            while order * d <= max {
                if prefix.last().is_none_or(|&p| d % p == 0) {
                    prefix.push(d);
                    chains(prefix, order * d, max, out);
                    prefix.pop();
                }
                d += 1;
            }
        }
        let mut all = Vec::new();
        chains(&mut Vec::new(), 1, max_order, &mut all);
        let mut groups = all
            .into_iter()
            .map(|f| AbelianGroup::new(f, limits))
            .collect::<Result<Vec<_>, _>>()?;
        groups.sort_by(|a, b| (a.order, &a.factors).cmp(&(b.order, &b.factors)));
        Ok(groups)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// An endomorphism given by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    columns: Vec<usize>,
}

impl GroupHom {
    /// Checks that each column is killed by the order of its generator.
    pub fn from_columns(group: &AbelianGroup, columns: Vec<usize>) -> Result<GroupHom, GroupError> {
        if columns.len() != group.factors.len() || columns.iter().any(|&c| c >= group.order) {
            return Err(GroupError::Parse(format!("bad column list {columns:?}")));
        }
        for (i, (&c, &d)) in columns.iter().zip(&group.factors).enumerate() {
            if group.times(d, c) != 0 {
                return Err(GroupError::IllDefined {
                    column: i,
                    modulus: d,
                });
            }
        }
        Ok(GroupHom { columns })
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// Entry `(i, j)` is the `j`-th coordinate of the image of `e_i`.
    pub fn matrix(&self, group: &AbelianGroup) -> Vec<Vec<u64>> {
        self.columns
            .iter()
            .map(|&c| group.coords(c).to_vec())
            .collect()
    }

    pub fn apply_all(&self, group: &AbelianGroup) -> Vec<u8> {
        group.evaluate(&self.columns)
    }

    pub fn describe(&self, group: &AbelianGroup) -> String {
        let parts: Vec<String> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, &c)| format!("e{i}↦{}", group.element_name(c)))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Decodes the `index`-th endomorphism in the mixed-radix order over
/// `candidates[i]`, first column slowest.
pub(crate) fn decode_columns(candidates: &[Vec<usize>], mut index: u128, out: &mut [usize]) {
    for (slot, cand) in out.iter_mut().zip(candidates).rev() {
        let n = cand.len() as u128;
        *slot = cand[(index % n) as usize];
        index /= n;
    }
}

impl AbelianGroup {
    /// Admissible images for each standard generator.
    pub(crate) fn column_candidates(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|&d| self.killed_by(d)).collect()
    }

    /// All endomorphisms, refusing rings larger than the limit.
    pub fn endomorphisms(&self, limits: &Limits) -> Result<Vec<GroupHom>, GroupError> {
        let count = self.endomorphism_count();
        if count > limits.max_group_endos {
            return Err(GroupError::SizeLimitExceeded {
                what: "endomorphism ring size",
                size: count,
                limit: limits.max_group_endos,
            });
        }
        let candidates = self.column_candidates();
        let mut columns = vec![0usize; self.factors.len()];
        Ok((0..count)
            .map(|i| {
                decode_columns(&candidates, i, &mut columns);
                GroupHom {
                    columns: columns.clone(),
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(text: &str) -> AbelianGroup {
        AbelianGroup::parse(text, &Limits::default()).unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(group("2,4").order(), 8);
        assert_eq!(group("1").order(), 1);
        assert!(matches!(
            AbelianGroup::parse("4,2", &Limits::default()),
            Err(GroupError::NotAChain(_))
        ));
        assert!(matches!(
            AbelianGroup::parse("x", &Limits::default()),
            Err(GroupError::Parse(_))
        ));
        assert!(matches!(
            AbelianGroup::parse("128", &Limits::default()),
            Err(GroupError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn arithmetic() {
        let g = group("2,4");
        let a = g.unit(0);
        let b = g.unit(1);
        assert_eq!(g.coords(a), [1, 0]);
        assert_eq!(g.coords(b), [0, 1]);
        assert_eq!(g.add(a, a), 0);
        assert_eq!(g.times(4, b), 0);
        assert_eq!(g.element_name(g.add(a, b)), "(1,1)");
    }

    #[test]
    fn endomorphism_counts() {
        let limits = Limits::default();
        for n in 1..=12u64 {
            let g = AbelianGroup::new(vec![n], &limits).unwrap();
            assert_eq!(g.endomorphisms(&limits).unwrap().len() as u64, n);
        }
        assert_eq!(group("2,2").endomorphisms(&limits).unwrap().len(), 16);
        // Four choices for the image of the order-2 generator, eight for the other.
        assert_eq!(group("2,4").endomorphism_count(), 32);
    }

    #[test]
    fn evaluation_is_additive() {
        let g = group("2,4");
        for f in g.endomorphisms(&Limits::default()).unwrap() {
            let img = f.apply_all(&g);
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(
                        img[g.add(a, b)] as usize,
                        g.add(img[a] as usize, img[b] as usize)
                    );
                }
            }
        }
    }

    #[test]
    fn ill_defined_column_is_rejected() {
        let g = group("2,4");
        let err = GroupHom::from_columns(&g, vec![g.unit(1), 0]).unwrap_err();
        assert_eq!(
            err,
            GroupError::IllDefined {
                column: 0,
                modulus: 2
            }
        );
    }

    #[test]
    fn enumeration_of_small_groups() {
        let groups = AbelianGroup::all_up_to(16, &Limits::default()).unwrap();
        let count = |n: usize| groups.iter().filter(|g| g.order() == n).count();
        assert_eq!(count(1), 1);
        assert_eq!(count(8), 3);
        assert_eq!(count(16), 5);
        assert_eq!(count(12), 2);
    }

    #[test]
    fn semisimplicity() {
        assert!(group("2,2").is_semisimple());
        assert!(group("6").is_semisimple());
        assert!(!group("4").is_semisimple());
        assert!(!group("2,4").is_semisimple());
    }
}
