#![allow(dead_code)]

pub mod golden;

use std::collections::BTreeMap;

use linform::solver::{TargetFunction, TargetValue};
use linform::{AugmentedForm, LinearForm, PeriodicSet, SetTuple};

pub fn form(coeffs: &[i64]) -> LinearForm {
    LinearForm::new(coeffs.to_vec()).unwrap()
}

pub fn aug(coeffs: &[i64], v: i64) -> AugmentedForm {
    AugmentedForm::new(form(coeffs), v).unwrap()
}

pub fn tuple(sets: &[&[i64]]) -> SetTuple {
    SetTuple::new(sets.iter().map(|s| s.to_vec()).collect()).unwrap()
}

pub fn pset(m: i64, r: &[i64]) -> PeriodicSet {
    PeriodicSet::new(m, r.to_vec()).unwrap()
}

/// A known t-complementing pair.
pub struct Pair {
    pub form: AugmentedForm,
    pub sets: SetTuple,
    pub b: PeriodicSet,
    pub t: u64,
}

pub fn complement_corpus() -> Vec<Pair> {
    let p = |c: &[i64], v: i64, a: &[&[i64]], m: i64, r: &[i64], t: u64| Pair {
        form: aug(c, v),
        sets: tuple(a),
        b: pset(m, r),
        t,
    };
    vec![
        p(&[1], 1, &[&[0, 1]], 2, &[0], 1),
        p(&[1], 1, &[&[0, 1, 2]], 3, &[0], 1),
        p(&[1], 1, &[&[0, 2]], 4, &[0, 1], 1),
        p(&[1], 1, &[&[0, 1]], 1, &[0], 2),
        p(&[1], 2, &[&[0, 1, 4, 5]], 4, &[0, 1], 1),
        p(&[1], 1, &[&[0, 1, 2, 3]], 4, &[0], 1),
        p(&[1], 1, &[&[0, 1, 2, 3]], 2, &[0], 2),
        p(&[1], 1, &[&[0, 3]], 6, &[0, 1, 2], 1),
        p(&[1], 1, &[&[0, 1, 4, 5]], 8, &[0, 2], 1),
        p(&[2], 1, &[&[0, 1]], 4, &[0, 1], 1),
        p(&[1, 1], 1, &[&[0, 1], &[0, 2]], 4, &[0], 1),
        p(&[1, -1], 1, &[&[0, 1], &[0, 1]], 1, &[0], 4),
        p(&[-1], 1, &[&[0, 1, 2]], 3, &[0], 1),
        p(&[1], -1, &[&[0, 1]], 2, &[0], 1),
        p(&[1], 3, &[&[0, 1, 2, 3, 4, 5]], 2, &[0], 1),
        p(&[3], 1, &[&[0, 1, 2]], 9, &[0, 1, 2], 1),
    ]
}

/// Window problems small enough for subset enumeration.
pub struct SolveCase {
    pub form: AugmentedForm,
    pub sets: SetTuple,
    pub target: TargetFunction,
    pub n: u64,
}

pub fn solver_corpus() -> Vec<SolveCase> {
    let mut cases = Vec::new();
    let sets: [&[i64]; 8] = [
        &[0, 1],
        &[0, 2],
        &[0, 1, 2],
        &[0, 1, 3],
        &[0, 2, 3],
        &[0, 1, 4, 5],
        &[-1, 2],
        &[0, 3, 4],
    ];
    for a in sets {
        for v in [1, 2, -1] {
            for t in [1, 2] {
                for n in [0, 2, 4, 7] {
                    cases.push(SolveCase {
                        form: aug(&[1], v),
                        sets: tuple(&[a]),
                        target: TargetFunction::constant(t),
                        n,
                    });
                }
            }
        }
    }
    let with = |default: TargetValue, over: &[(i64, u64)]| {
        TargetFunction::new(default, over.iter().copied().collect::<BTreeMap<_, _>>()).unwrap()
    };
    let extra = [
        (aug(&[1], 1), tuple(&[&[0, 1]]), with(TargetValue::Finite(1), &[(0, 3)]), 0),
        (aug(&[1], 1), tuple(&[&[0, 1]]), with(TargetValue::Finite(1), &[(0, 2)]), 3),
        (aug(&[1], 1), tuple(&[&[0, 1, 2]]), with(TargetValue::Finite(0), &[(1, 1), (-2, 2)]), 4),
        (aug(&[1], 1), tuple(&[&[0, 1]]), with(TargetValue::Unbounded, &[(0, 0), (3, 2)]), 5),
        (aug(&[1, 1], 1), tuple(&[&[0, 1], &[0, 2]]), TargetFunction::constant(1), 6),
        (aug(&[1, -1], 1), tuple(&[&[0, 1], &[0, 1]]), TargetFunction::constant(2), 5),
        (aug(&[2], 1), tuple(&[&[0, 1]]), TargetFunction::constant(1), 8),
        (aug(&[1], 3), tuple(&[&[0, 1, 2, 3, 4, 5]]), TargetFunction::constant(1), 10),
        (aug(&[1], 1), tuple(&[&[0, 1, 3]]), TargetFunction::constant(1), 9),
        (aug(&[1], 1), tuple(&[&[0, 1]]), TargetFunction::constant(0), 4),
    ];
    for (form, sets, target, n) in extra {
        cases.push(SolveCase { form, sets, target, n });
    }
    cases
}

/// Number of tuples of `A` whose form value satisfies `pred`, by recursion
/// over the coordinates.
pub fn count_tuples(coeffs: &[i64], sets: &[Vec<i64>], pred: &dyn Fn(i64) -> bool) -> u64 {
    fn go(coeffs: &[i64], sets: &[Vec<i64>], acc: i64, pred: &dyn Fn(i64) -> bool) -> u64 {
        match sets.split_first() {
            None => u64::from(pred(acc)),
            Some((first, rest)) => first
                .iter()
                .map(|&a| go(&coeffs[1..], rest, acc + coeffs[0] * a, pred))
                .sum(),
        }
    }
    go(coeffs, sets, 0, pred)
}

/// Brute-force `R_{A,B}(n)` for finite `B`: every `(a, b)` pair is tried.
pub fn brute_count_finite(form: &AugmentedForm, sets: &SetTuple, b: &[i64], n: i64) -> u64 {
    b.iter()
        .map(|&y| {
            count_tuples(form.base().coeffs(), sets.sets(), &|g| g + form.v() * y == n)
        })
        .sum()
}

/// Does any subset of `[lo, hi]` meet the target on `[-N, N]`?
///
/// Walks all subsets in Gray-code order, maintaining the counts and the
/// number of window points that currently miss their target.
pub fn subset_oracle(case: &SolveCase, lo: i64, hi: i64) -> bool {
    let radius = case.n as i64;
    let width = (2 * radius + 1) as usize;
    let coeffs = case.form.base().coeffs();
    let v = case.form.v();
    // image values with multiplicity, by enumeration
    let mut image: BTreeMap<i64, u64> = BTreeMap::new();
    let mut stack = vec![(0usize, 0i64)];
    while let Some((i, acc)) = stack.pop() {
        if i == coeffs.len() {
            *image.entry(acc).or_default() += 1;
            continue;
        }
        for &a in &case.sets.sets()[i] {
            stack.push((i + 1, acc + coeffs[i] * a));
        }
    }
    let candidates: Vec<i64> = (lo..=hi).collect();
    let hits: Vec<Vec<(usize, u64)>> = candidates
        .iter()
        .map(|&b| {
            image
                .iter()
                .filter_map(|(&g, &c)| {
                    let n = g + v * b;
                    (n.abs() <= radius).then(|| ((n + radius) as usize, c))
                })
                .collect()
        })
        .collect();
    let target: Vec<Option<u64>> = (-radius..=radius)
        .map(|n| match case.target.value(n) {
            TargetValue::Finite(f) => Some(f),
            TargetValue::Unbounded => None,
        })
        .collect();
    let miss = |count: u64, i: usize| target[i].is_some_and(|f| f != count);
    let mut counts = vec![0u64; width];
    let mut misses = (0..width).filter(|&i| miss(0, i)).count();
    let mut on = vec![false; candidates.len()];
    if misses == 0 {
        return true;
    }
    let total: u64 = 1 << candidates.len();
    for step in 1..total {
        let bit = step.trailing_zeros() as usize;
        on[bit] = !on[bit];
        for &(i, c) in &hits[bit] {
            let before = miss(counts[i], i);
            if on[bit] {
                counts[i] += c;
            } else {
                counts[i] -= c;
            }
            let after = miss(counts[i], i);
            misses = misses + usize::from(after) - usize::from(before);
        }
        if misses == 0 {
            return true;
        }
    }
    false
}
