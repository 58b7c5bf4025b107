//! Exhaustive enumeration of (-1)- and (-2)-classes.
//!
//! A class C = dL − Σ dᵢEᵢ is exceptional when C² = −1 and C·K = −1, i.e.
//!
//! ```text
//! Σ dᵢ = 3d − 1,    Σ dᵢ² = d² + 1 .
//! ```
//!
//! Cauchy–Schwarz on these two relations gives (3d−1)² ≤ n(d²+1), so for
//! n ≤ 8 the line coefficient satisfies (d−7)(d+1) ≤ 0, i.e. 0 ≤ d ≤ 7 once
//! d ≥ 0 is imposed; the enumeration over that box is therefore complete.
//! (-2)-classes with C·K = 0 satisfy Σdᵢ = 3d, Σdᵢ² = d² + 2 and the same
//! argument bounds d ≤ 4.  Solutions are searched with the remaining sum and
//! square budget pruned at every level, partitioned by the leading
//! coefficient and merged in canonical (lexicographic) order.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::picard::{DivisorClass, LatticeError, SurfacePair};

/// Upper bound for the line coefficient of an exceptional class (rank ≤ 8).
pub const EXCEPTIONAL_LINE_BOUND: i64 = 7;

/// Upper bound for the line coefficient of a non-negative (-2)-class.
pub const MINUS_TWO_LINE_BOUND: i64 = 4;

/// The complete set of exceptional classes of a lattice rank, canonically
/// ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalSet {
    rank: usize,
    classes: Vec<DivisorClass>,
}

impl ExceptionalSet {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, class: &DivisorClass) -> bool {
        self.classes.binary_search(class).is_ok()
    }

    /// The subset meeting E, i.e. classes with C·E > 0, in canonical order.
    pub fn meeting(&self, e: &DivisorClass) -> Result<Vec<DivisorClass>, LatticeError> {
        let mut out = Vec::new();
        for c in &self.classes {
            if c.intersect(e)? > 0 {
                out.push(c.clone());
            }
        }
        Ok(out)
    }
}

/// Enumerates every class with C² = −1, C·K = −1 on the rank-n lattice.
pub fn enumerate_exceptional(rank: usize) -> Result<ExceptionalSet, LatticeError> {
    if rank < 1 || rank > 8 {
        return Err(LatticeError::InvalidSurface(format!(
            "rank must be between 1 and 8, got {rank}"
        )));
    }
    let classes = enumerate_by_line_coeff(rank, EXCEPTIONAL_LINE_BOUND, -1, 1, 1);
    if rank == 8 {
        // The Cauchy-Schwarz bound d <= 7 is attained by no solution; the
        // largest line coefficient in the rank-8 set is 6.
        assert!(
            classes.iter().all(|c| c.line_coeff() < 7),
            "rank-8 exceptional enumeration produced a class at the d = 7 boundary"
        );
    }
    Ok(ExceptionalSet { rank, classes })
}

/// Enumerates every class with C² = −2, C·K = 0 and non-negative line
/// coefficient on the rank-n lattice.
pub fn minus_two_classes(rank: usize) -> Result<Vec<DivisorClass>, LatticeError> {
    if rank < 1 || rank > 8 {
        return Err(LatticeError::InvalidSurface(format!(
            "rank must be between 1 and 8, got {rank}"
        )));
    }
    Ok(enumerate_by_line_coeff(rank, MINUS_TWO_LINE_BOUND, -2, 0, 2))
}

/// Solutions of Σdᵢ = 3d − adj, Σdᵢ² = d² + q with dᵢ ≥ lo, 0 ≤ d ≤ bound,
/// partitioned by d and merged in canonical order.
fn enumerate_by_line_coeff(
    rank: usize,
    bound: i64,
    lo: i64,
    adj: i64,
    q: i64,
) -> Vec<DivisorClass> {
    let leading: Vec<i64> = (0..=bound).collect();
    let per_d: Vec<Vec<DivisorClass>> = leading
        .into_par_iter()
        .map(|d| {
            let mut found = Vec::new();
            let mut prefix = Vec::with_capacity(rank);
            search(d, rank, 3 * d - adj, d * d + q, lo, &mut prefix, &mut found);
            found
        })
        .collect();
    let mut classes: Vec<DivisorClass> = per_d.into_iter().flatten().collect();
    classes.sort();
    classes
}

fn search(
    d: i64,
    slots: usize,
    sum: i64,
    sq: i64,
    lo: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<DivisorClass>,
) {
    if sq < 0 {
        return;
    }
    if slots == 0 {
        if sum == 0 && sq == 0 {
            let mut coeffs = Vec::with_capacity(prefix.len() + 1);
            coeffs.push(d);
            coeffs.extend_from_slice(prefix);
            out.push(DivisorClass::new(coeffs).expect("small coefficients"));
        }
        return;
    }
    let k = slots as i64;
    let hi = isqrt(sq);
    // Feasibility: k values in [lo, hi] must reach the remaining sum, and
    // Cauchy-Schwarz bounds the sum by the square budget.
    if sum < k * lo || sum > k * hi || sum * sum > k * sq {
        return;
    }
    let c_lo = lo.max(sum - (k - 1) * hi);
    let c_hi = hi.min(sum - (k - 1) * lo);
    for c in c_lo..=c_hi {
        prefix.push(c);
        search(d, slots - 1, sum - c, sq - c * c, lo, prefix, out);
        prefix.pop();
    }
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Special classes of a configuration: the (-1)-class E₀ = −(K+E) when the
/// pair has degree 1, and the non-negative (-2)-classes of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialClasses {
    pub e0: Option<DivisorClass>,
    pub minus2_classes: BTreeSet<DivisorClass>,
}

/// Reports E₀ (degree-1 pairs only) and the (-2)-class list.
pub fn find_special_classes(ctx: &SurfacePair) -> Result<SpecialClasses, LatticeError> {
    let e0 = if ctx.degree() == 1 {
        let e0 = ctx.e0_class().clone();
        debug_assert_eq!(e0.self_intersection(), -1);
        debug_assert_eq!(e0.intersect(ctx.e_class())?, 2);
        Some(e0)
    } else {
        None
    };
    let minus2_classes = minus_two_classes(ctx.rank())?.into_iter().collect();
    Ok(SpecialClasses { e0, minus2_classes })
}

/// All unordered pairs (C, C') of exceptional classes that could violate
/// property T(1)(ii): both meet E and they meet each other.
///
/// Whether such a pair actually shares a point of E is geometric; the lattice
/// only rules pairs in or out.
pub fn t1_conflict_pairs(
    ctx: &SurfacePair,
) -> Result<Vec<(DivisorClass, DivisorClass)>, LatticeError> {
    if ctx.degree() != 1 {
        return Err(LatticeError::InvalidSurface(format!(
            "property T(1) queries need a degree-1 pair, got degree {}",
            ctx.degree()
        )));
    }
    let meeting = enumerate_exceptional(ctx.rank())?.meeting(ctx.e_class())?;
    let mut pairs = Vec::new();
    for (i, a) in meeting.iter().enumerate() {
        for b in meeting.iter().skip(i + 1) {
            if a.intersect(b)? > 0 {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::Side;

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_counts_match_the_classical_values() {
        for (rank, expect) in [(1, 1), (2, 3), (3, 6), (4, 10), (5, 16), (6, 27), (7, 56)] {
            assert_eq!(enumerate_exceptional(rank).unwrap().len(), expect);
        }
    }

    #[test]
    fn rank_8_set_has_240_classes() {
        let set = enumerate_exceptional(8).unwrap();
        assert_eq!(set.len(), 240);
        for c in set.classes() {
            assert_eq!(c.self_intersection(), -1);
            assert_eq!(c.intersect(&DivisorClass::canonical(8)).unwrap(), -1);
        }
    }

    #[test]
    fn rank_1_set_is_just_e1() {
        let set = enumerate_exceptional(1).unwrap();
        assert_eq!(set.classes(), &[cls(&[0, -1])]);
    }

    /// Independent oracle for the 240: enumerate sorted coefficient
    /// multisets per line coefficient and count their arrangements.
    #[test]
    fn rank_8_count_against_partition_oracle() {
        let mut total = 0u64;
        for d in 0..=7i64 {
            let mut stack = vec![(Vec::<i64>::new(), 3 * d - 1, d * d + 1)];
            while let Some((partial, sum, sq)) = stack.pop() {
                if partial.len() == 8 {
                    if sum == 0 && sq == 0 {
                        total += arrangements(&partial);
                    }
                    continue;
                }
                let hi = partial.last().copied().unwrap_or(7);
                for c in -1..=hi {
                    let (s, q) = (sum - c, sq - c * c);
                    if q < 0 {
                        continue;
                    }
                    let mut next = partial.clone();
                    next.push(c);
                    stack.push((next, s, q));
                }
            }
        }
        assert_eq!(total, 240);
    }

    fn arrangements(sorted_desc: &[i64]) -> u64 {
        // multinomial 8! / prod(multiplicities!)
        let mut result = fact(8);
        let mut i = 0;
        while i < sorted_desc.len() {
            let mut j = i;
            while j < sorted_desc.len() && sorted_desc[j] == sorted_desc[i] {
                j += 1;
            }
            result /= fact(j - i);
            i = j;
        }
        result
    }

    fn fact(n: usize) -> u64 {
        (1..=n as u64).product::<u64>().max(1)
    }

    /// The E-meeting sublist is the 57-class list: expanding its four rows
    /// gives shapes of sizes 6, 13, 20, 12 and 6.
    #[test]
    fn e_meeting_subset_matches_the_explicit_list() {
        let pair = SurfacePair::deg1_standard();
        let meeting: BTreeSet<DivisorClass> = enumerate_exceptional(8)
            .unwrap()
            .meeting(pair.e_class())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(meeting.len(), 57);

        let mut expected = BTreeSet::new();
        // E_i, 1 <= i <= 6.
        for i in 1..=6 {
            expected.insert(DivisorClass::exceptional(8, i).unwrap());
        }
        assert_eq!(expected.len(), 6);

        // L - E_i - E_j with 1 <= i < j and 7 <= j <= 8.
        let mut row2 = 0;
        for j in 7..=8usize {
            for i in 1..j {
                let mut v = vec![0i64; 9];
                v[0] = 1;
                v[i] = 1;
                v[j] = 1;
                if i == j {
                    continue;
                }
                expected.insert(cls(&v));
                row2 += 1;
            }
        }
        assert_eq!(row2, 13);

        // 2L - E_i1 - E_i2 - E_i3 - E_7 - E_8 with 1 <= i1 < i2 < i3 <= 6.
        let mut row3 = 0;
        for i1 in 1..=6usize {
            for i2 in (i1 + 1)..=6 {
                for i3 in (i2 + 1)..=6 {
                    let mut v = vec![0i64; 9];
                    v[0] = 2;
                    v[i1] = 1;
                    v[i2] = 1;
                    v[i3] = 1;
                    v[7] = 1;
                    v[8] = 1;
                    expected.insert(cls(&v));
                    row3 += 1;
                }
            }
        }
        assert_eq!(row3, 20);

        // 3L - sum_{i != j,k} E_i - 2E_k with 1 <= j <= 6 and 7 <= k <= 8.
        let mut row4 = 0;
        for j in 1..=6usize {
            for k in 7..=8usize {
                let mut v = vec![1i64; 9];
                v[0] = 3;
                v[j] = 0;
                v[k] = 2;
                expected.insert(cls(&v));
                row4 += 1;
            }
        }
        assert_eq!(row4, 12);

        // 4L - sum_{i <= 6, i != j} E_i - 2E_j - 2E_7 - 2E_8 with 1 <= j <= 6.
        let mut row5 = 0;
        for j in 1..=6usize {
            let mut v = vec![1i64; 9];
            v[0] = 4;
            v[j] = 2;
            v[7] = 2;
            v[8] = 2;
            expected.insert(cls(&v));
            row5 += 1;
        }
        assert_eq!(row5, 6);

        assert_eq!(expected.len(), 57);
        assert_eq!(meeting, expected);
    }

    #[test]
    fn special_classes_on_degree_1() {
        let pair = SurfacePair::deg1_standard();
        let special = find_special_classes(&pair).unwrap();
        assert_eq!(
            special.e0.unwrap(),
            cls(&[1, 0, 0, 0, 0, 0, 0, 1, 1]) // L - E7 - E8
        );
        assert!(special.minus2_classes.contains(pair.e_class()));
        for c in &special.minus2_classes {
            assert_eq!(c.self_intersection(), -2);
            assert_eq!(c.intersect(&DivisorClass::canonical(8)).unwrap(), 0);
            assert!(c.line_coeff() >= 0);
        }
    }

    #[test]
    fn rank_8_nonnegative_root_count() {
        // E8 has 240 roots; 56 have line coefficient 0 (E_i - E_j), and of
        // the remaining 184 exactly half have positive line coefficient:
        // 56 + 56 + 28 + 8 = 148 with d >= 0.
        assert_eq!(minus_two_classes(8).unwrap().len(), 148);
    }

    #[test]
    fn e0_absent_outside_degree_1() {
        let conic = SurfacePair::conic_p2_03();
        let special = find_special_classes(&conic).unwrap();
        assert!(special.e0.is_none());
        assert!(special.minus2_classes.contains(conic.e_class()));
    }

    #[test]
    fn t1_pairs_examples() {
        let pair = SurfacePair::deg1_standard();
        let pairs = t1_conflict_pairs(&pair).unwrap();
        let e1 = DivisorClass::exceptional(8, 1).unwrap();
        let e2 = DivisorClass::exceptional(8, 2).unwrap();
        let l_e1_e7 = cls(&[1, 1, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(e1.intersect(&l_e1_e7).unwrap(), 1);
        let has = |a: &DivisorClass, b: &DivisorClass| {
            pairs
                .iter()
                .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
        };
        assert!(has(&e1, &l_e1_e7));
        assert!(!has(&e1, &e2));
    }

    #[test]
    fn t1_pairs_requires_degree_1() {
        let conic = SurfacePair::conic_p2_03();
        assert!(t1_conflict_pairs(&conic).is_err());
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_exceptional(8).unwrap();
        let b = enumerate_exceptional(8).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.classes().to_vec();
        sorted.sort();
        assert_eq!(sorted, a.classes());
    }

    #[test]
    fn meeting_respects_custom_e() {
        // A root E' = E1 - E2 as the designated (-2)-class.
        let root = cls(&[0, 1, -1, 0, 0, 0, 0, 0, 0]);
        let pair = SurfacePair::new(
            8,
            root,
            crate::picard::RealityFlags::default(),
            Side::Plus,
        )
        .unwrap();
        for c in enumerate_exceptional(8)
            .unwrap()
            .meeting(pair.e_class())
            .unwrap()
        {
            assert!(c.intersect(pair.e_class()).unwrap() > 0);
        }
    }
}
