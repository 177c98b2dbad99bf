//! Moving two rays through matched fold sequences.
//!
//! A fold at depth `m` is legal when the `m - 1` symbols above it match the
//! corresponding stretch of `τ`. To make a key fold legal, the shallow end of
//! each itinerary is rewritten into such a stretch by a sequence of folds.
//! [`geodesic`] finds that sequence for one ray, [`transport`] pairs the two
//! rays' sequences when they fold in the same residue classes, and
//! [`drive_cycle`] strings transports and key folds together.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::backward::BackSeq;
use crate::fold::{fold_apply, FlipChoice};
use crate::kneading::KneadingSeq;
use crate::ray::{FoldSpec, IllegalCause};
use crate::symbol::{Symbol, Word};

/// Largest window the search will enumerate.
pub const MAX_WINDOW: usize = 40;
const MAX_STATES: usize = 1 << 22;

/// Choices for the star positions of `τ`-blocks, consumed left to right.
/// Once exhausted every further choice is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fill {
    symbols: Vec<Symbol>,
    used: usize,
}

impl Fill {
    /// Fails on a `*`, which is not a valid replacement.
    pub fn new(symbols: Vec<Symbol>) -> Option<Self> {
        if symbols.iter().any(|s| s.is_star()) {
            return None;
        }
        Some(Fill { symbols, used: 0 })
    }

    pub fn next_symbol(&mut self) -> Symbol {
        let s = self.symbols.get(self.used).copied().unwrap_or(Symbol::One);
        self.used += 1;
        s
    }

    pub fn consumed(&self) -> usize {
        self.used
    }
}

/// The depths flipped by each fold of a path, in order.
pub type FoldPath = Vec<BTreeSet<usize>>;

/// A step where the two rays fold at different depths of one residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyFold {
    pub e_depth: usize,
    pub f_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("key fold {key}: depths {e_depth} and {f_depth} lie in different residue classes")]
    MismatchedResidues {
        key: usize,
        e_depth: usize,
        f_depth: usize,
    },
    #[error("key fold {key}: window {window} exceeds the search limit")]
    WindowTooLarge { key: usize, window: usize },
    #[error("key fold {key}: no fold path reaches the required window")]
    Unreachable { key: usize },
    /// The only route to the required window passes back through an
    /// itinerary the ray has already left.
    #[error("key fold {key}: the {side} side would have to backtrack")]
    Backtrack { key: usize, side: &'static str },
    #[error("key fold {key}: the two routes fold in different residue classes")]
    ClassMismatch { key: usize },
    #[error("key fold {key} is illegal on the {side} side: {cause}")]
    KeyFold {
        key: usize,
        side: &'static str,
        cause: IllegalCause,
    },
}

/// The folds and itineraries produced by [`drive_cycle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRun {
    pub folds_e: Vec<FoldSpec>,
    pub folds_f: Vec<FoldSpec>,
    pub states_e: Vec<BackSeq>,
    pub states_f: Vec<BackSeq>,
    pub end_e: BackSeq,
    pub end_f: BackSeq,
}

fn bits(word: &Word) -> Vec<bool> {
    // Index j - 1 holds depth j; `true` marks the symbol 2.
    word.symbols()
        .iter()
        .rev()
        .map(|&s| s == Symbol::Two)
        .collect()
}

fn mask_between(a: &[bool], b: &[bool]) -> u64 {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .fold(0, |m, (j, _)| m | (1 << j))
}

/// A shortest fold sequence taking `x` to the itinerary whose last
/// `target.len()` symbols are `target`, touching nothing deeper and never
/// entering an itinerary of `avoid`. Each fold is returned as its set of
/// flipped depths, all in one residue class.
///
/// Arc-components are tree-like, so when a path exists it is the unique
/// geodesic, and `None` means the geodesic backtracks or leaves the window.
pub fn geodesic(
    x: &BackSeq,
    target: &Word,
    tau: &KneadingSeq,
    avoid: &HashSet<BackSeq>,
) -> Option<Vec<BTreeSet<usize>>> {
    let w = target.len();
    let window = x.last(w);
    if w > MAX_WINDOW || window.contains_star() || target.contains_star() {
        return None;
    }
    let base = bits(&window);
    let goal = mask_between(&base, &bits(target));

    let outer = x.drop_last(w);
    let mut blocked: HashSet<u64> = avoid
        .iter()
        .filter(|v| v.drop_last(w) == outer)
        .map(|v| v.last(w))
        .filter(|tail| !tail.contains_star())
        .map(|tail| mask_between(&base, &bits(&tail)))
        .collect();
    blocked.remove(&0);
    if blocked.contains(&goal) {
        return None;
    }

    let n = tau.period();
    // `need[m][j]` is τ_{(m - j) mod N} as a bit, or None at a star.
    let need: Vec<Vec<Option<bool>>> = (0..=w)
        .map(|m| {
            (0..m)
                .map(|j| match tau.sym(m as i64 - j as i64) {
                    Symbol::Star => None,
                    s => Some(s == Symbol::Two),
                })
                .collect()
        })
        .collect();
    let legal = |mask: u64, m: usize| {
        (1..m)
            .all(|j| need[m][j].is_none_or(|t| (base[j - 1] ^ (((mask >> (j - 1)) & 1) == 1)) == t))
    };
    // A fold whose deepest flip is `m` may also flip any shallower depth of
    // the same class, since β covers all of them.
    let moves: Vec<Vec<u64>> = (0..=w)
        .map(|m| {
            if m == 0 {
                return Vec::new();
            }
            let lower: Vec<usize> = (1..m).filter(|j| (m - j) % n == 0).collect();
            (0u64..1 << lower.len())
                .map(|sub| {
                    lower
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| sub >> b & 1 == 1)
                        .fold(1u64 << (m - 1), |acc, (_, &j)| acc | 1 << (j - 1))
                })
                .collect()
        })
        .collect();

    let mut parent: HashMap<u64, (u64, u64)> = HashMap::from([(0, (0, 0))]);
    let mut queue = VecDeque::from([0u64]);
    while let Some(mask) = queue.pop_front() {
        if mask == goal {
            let mut path = Vec::new();
            let mut cur = mask;
            while cur != 0 {
                let (prev, flip) = parent[&cur];
                path.push(
                    (0..w)
                        .filter(|j| flip >> j & 1 == 1)
                        .map(|j| j + 1)
                        .collect(),
                );
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for (m, flips) in moves.iter().enumerate().take(w + 1).skip(1) {
            if !legal(mask, m) {
                continue;
            }
            for &flip in flips {
                let next = mask ^ flip;
                if parent.contains_key(&next) || blocked.contains(&next) {
                    continue;
                }
                parent.insert(next, (mask, flip));
                if parent.len() > MAX_STATES {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    None
}

fn residue_of(depths: &BTreeSet<usize>, n: usize) -> usize {
    depths.iter().next_back().map_or(0, |m| m % n)
}

/// Geodesics taking the last symbols of `e` to `target_e` and those of `f`
/// to `target_f`, accepted only when they have equal length and fold in the
/// same residue class at every step. When both windows lie below the first
/// discrepancy of `e` and `f` and the targets agree, the two paths coincide.
pub fn transport(
    e: &BackSeq,
    f: &BackSeq,
    targets: (&Word, &Word),
    tau: &KneadingSeq,
    avoid_e: &HashSet<BackSeq>,
    avoid_f: &HashSet<BackSeq>,
) -> Option<(FoldPath, FoldPath)> {
    let n = tau.period();
    let pe = geodesic(e, targets.0, tau, avoid_e)?;
    let pf = geodesic(f, targets.1, tau, avoid_f)?;
    let matched = pe.len() == pf.len()
        && pe
            .iter()
            .zip(&pf)
            .all(|(a, b)| residue_of(a, n) == residue_of(b, n));
    matched.then_some((pe, pf))
}

/// The `τ`-block that makes a single fold at depth `d` legal: the symbol at
/// depth `j < d` must be `≈ τ_{(d - j) mod N}`.
fn required(d: usize, j: usize, tau: &KneadingSeq) -> Symbol {
    tau.sym(d as i64 - j as i64)
}

/// Deepest `j < d` with `x_{-j} ≉ τ_{(d-j) mod N}`, or 0.
fn deepest_violation(x: &BackSeq, d: usize, tau: &KneadingSeq) -> usize {
    (1..d)
        .rev()
        .find(|&j| !x.depth(j).approx(required(d, j, tau)))
        .unwrap_or(0)
}

/// Runs the key folds in order, transporting both rays first whenever a key
/// fold is not yet legal.
///
/// Before key `(d_e, d_f)` the last `w` symbols are overwritten by the block
/// `τ_{d_e - w} … τ_{d_e - 1}` with stars replaced from `fill`, where `w` is
/// the deepest position that blocks either fold. Itineraries in `visited_e`,
/// `visited_f` and those produced along the way are never revisited.
pub fn drive_cycle(
    e: &BackSeq,
    f: &BackSeq,
    keys: &[KeyFold],
    tau: &KneadingSeq,
    fill: &mut Fill,
    visited_e: &HashSet<BackSeq>,
    visited_f: &HashSet<BackSeq>,
) -> Result<CycleRun, CycleError> {
    let n = tau.period();
    let mut seen_e = visited_e.clone();
    let mut seen_f = visited_f.clone();
    seen_e.insert(e.clone());
    seen_f.insert(f.clone());
    let (mut x, mut y) = (e.clone(), f.clone());
    let mut run = CycleRun {
        folds_e: Vec::new(),
        folds_f: Vec::new(),
        states_e: Vec::new(),
        states_f: Vec::new(),
        end_e: e.clone(),
        end_f: f.clone(),
    };

    for (key, k) in keys.iter().enumerate() {
        let key = key + 1;
        if k.e_depth % n != k.f_depth % n {
            return Err(CycleError::MismatchedResidues {
                key,
                e_depth: k.e_depth,
                f_depth: k.f_depth,
            });
        }
        let w = deepest_violation(&x, k.e_depth, tau).max(deepest_violation(&y, k.f_depth, tau));
        if w > 0 {
            if w > MAX_WINDOW {
                return Err(CycleError::WindowTooLarge { key, window: w });
            }
            let target: Word = (1..=w)
                .rev()
                .map(|j| match required(k.e_depth, j, tau) {
                    Symbol::Star => fill.next_symbol(),
                    s => s,
                })
                .collect();
            // A wider window keeps the extra symbols but lets the search route
            // through deeper folds.
            let widen = |z: &BackSeq, wide: usize| {
                let mut out: Word = z.last(wide).symbols()[..wide - w].iter().copied().collect();
                out.extend_from(&target);
                out
            };
            let (path_e, path_f) = (w..=(w + 2 * n).min(MAX_WINDOW))
                .find_map(|wide| {
                    transport(
                        &x,
                        &y,
                        (&widen(&x, wide), &widen(&y, wide)),
                        tau,
                        &seen_e,
                        &seen_f,
                    )
                })
                .ok_or_else(|| {
                    let none = HashSet::new();
                    let free_e = geodesic(&x, &target, tau, &none);
                    let free_f = geodesic(&y, &target, tau, &none);
                    match (free_e, free_f) {
                        (Some(_), Some(_)) if geodesic(&x, &target, tau, &seen_e).is_none() => {
                            CycleError::Backtrack { key, side: "e" }
                        }
                        (Some(_), Some(_)) if geodesic(&y, &target, tau, &seen_f).is_none() => {
                            CycleError::Backtrack { key, side: "f" }
                        }
                        (Some(_), Some(_)) => CycleError::ClassMismatch { key },
                        _ => CycleError::Unreachable { key },
                    }
                })?;
            for (de, df) in path_e.into_iter().zip(path_f) {
                let residue = residue_of(&de, n);
                let (fe, ff) = (FlipChoice::Depths(de), FlipChoice::Depths(df));
                x = fold_apply(&x, residue, &fe, tau).map_err(|c| CycleError::KeyFold {
                    key,
                    side: "e",
                    cause: c.into(),
                })?;
                y = fold_apply(&y, residue, &ff, tau).map_err(|c| CycleError::KeyFold {
                    key,
                    side: "f",
                    cause: c.into(),
                })?;
                seen_e.insert(x.clone());
                seen_f.insert(y.clone());
                run.folds_e.push(FoldSpec { residue, flips: fe });
                run.folds_f.push(FoldSpec { residue, flips: ff });
                run.states_e.push(x.clone());
                run.states_f.push(y.clone());
            }
        }
        let step = |z: &BackSeq, d: usize, seen: &mut HashSet<BackSeq>, side: &'static str| {
            let next =
                fold_apply(z, d, &FlipChoice::single(d), tau).map_err(|c| CycleError::KeyFold {
                    key,
                    side,
                    cause: c.into(),
                })?;
            if !seen.insert(next.clone()) {
                return Err(CycleError::KeyFold {
                    key,
                    side,
                    cause: IllegalCause::Revisit,
                });
            }
            Ok(next)
        };
        x = step(&x, k.e_depth, &mut seen_e, "e")?;
        y = step(&y, k.f_depth, &mut seen_f, "f")?;
        run.folds_e.push(FoldSpec::at_depth(k.e_depth, n));
        run.folds_f.push(FoldSpec::at_depth(k.f_depth, n));
        run.states_e.push(x.clone());
        run.states_f.push(y.clone());
    }
    run.end_e = x;
    run.end_f = y;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::w;

    fn b(per: &str, suf: &str) -> BackSeq {
        BackSeq::new(w(per), w(suf)).unwrap()
    }

    #[test]
    fn transport_moves_both_rays_identically() {
        let tau = KneadingSeq::from_body("112").unwrap();
        let e = b("1", "");
        let f = b("2", "111");
        let none = HashSet::new();
        let (pe, pf) = transport(&e, &f, (&w("21"), &w("21")), &tau, &none, &none).unwrap();
        assert_eq!(pe, pf);
        let mut x = e.clone();
        let mut y = f.clone();
        for depths in pe {
            let r = depths.iter().next_back().unwrap() % 4;
            let flips = FlipChoice::Depths(depths);
            x = fold_apply(&x, r, &flips, &tau).unwrap();
            y = fold_apply(&y, r, &flips, &tau).unwrap();
        }
        assert_eq!(x, b("1", "21"));
        assert_eq!(y, b("2", "121"));
    }

    #[test]
    fn fill_defaults_to_one() {
        let mut fill = Fill::new(vec![Symbol::Two]).unwrap();
        assert_eq!(fill.next_symbol(), Symbol::Two);
        assert_eq!(fill.next_symbol(), Symbol::One);
        assert_eq!(fill.consumed(), 2);
        assert!(Fill::new(vec![Symbol::Star]).is_none());
    }
}
