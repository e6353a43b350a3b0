use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::gca::{run_classical, ClassicalSeed};
use crate::gqca::QuantumSeed;
use crate::matrix::{from_rows, IMat};
use crate::patterns::run_path;
use crate::qcoeff::QCoeff;
use crate::seedcore::{CompatiblePair, MutationData, ZEntry};

use super::seedfile::{render_path, Seed};

/// Shape of the random corpus.
#[derive(Clone, Debug)]
pub struct RandomOptions {
    pub min_rank: usize,
    pub max_rank: usize,
    pub max_r: u32,
    pub max_entry: i64,
    pub max_len: usize,
    /// Paths along which some C- or G-matrix entry exceeds this are redrawn
    /// before any polynomial work.
    pub max_vector_entry: i64,
    /// Instances whose classical F-polynomials exceed this total degree are
    /// redrawn.
    pub max_degree: i64,
    /// Every other instance is a quantum seed with principal coefficients.
    pub quantum: bool,
}

impl Default for RandomOptions {
    fn default() -> Self {
        Self {
            min_rank: 2,
            max_rank: 3,
            max_r: 3,
            max_entry: 2,
            max_len: 6,
            max_vector_entry: 4,
            max_degree: 16,
            quantum: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub seed: Seed,
    pub path: Vec<usize>,
}

fn random_b(rng: &mut ChaCha8Rng, n: usize, max: i64) -> IMat {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = rng.gen_range(-max..=max);
            let b = if a == 0 {
                0
            } else {
                -a.signum() * rng.gen_range(1..=max)
            };
            rows[i][j] = a;
            rows[j][i] = b;
        }
    }
    from_rows(&rows).expect("square")
}

/// Bar-invariant, positive at `q^{1/2} = 1`.
fn random_h(rng: &mut ChaCha8Rng) -> QCoeff {
    loop {
        let c0 = rng.gen_range(0..=2i64);
        let c1 = rng.gen_range(0..=1i64);
        if c0 + c1 > 0 {
            return QCoeff::from_int(c0) + QCoeff::monomial(1, 0, c1) + QCoeff::monomial(-1, 0, c1);
        }
    }
}

fn palindrome<T: Clone>(r: u32, mut f: impl FnMut(u32) -> T, one: T) -> Vec<T> {
    let half: Vec<T> = (0..=r / 2).map(|s| if s == 0 { one.clone() } else { f(s) }).collect();
    (0..=r).map(|s| half[s.min(r - s) as usize].clone()).collect()
}

fn random_path(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    let mut path: Vec<usize> = Vec::with_capacity(len);
    while path.len() < len {
        let choices: Vec<usize> = (0..n).filter(|&k| path.last() != Some(&k)).collect();
        path.push(*choices.choose(rng).expect("n >= 2"));
    }
    path
}

fn draw(rng: &mut ChaCha8Rng, opts: &RandomOptions, quantum: bool) -> Option<(Seed, Vec<usize>)> {
    let n = rng.gen_range(opts.min_rank..=opts.max_rank);
    let r: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=opts.max_r)).collect();
    let b = random_b(rng, n, opts.max_entry);
    let path = random_path(rng, n, opts.max_len);
    let seed = if quantum {
        let h = r
            .iter()
            .map(|&rk| palindrome(rk, |_| random_h(rng), QCoeff::one()))
            .collect();
        let data = MutationData::quantum(r.clone(), h).ok()?;
        let pair = CompatiblePair::principal(&b).ok()?;
        Seed::Quantum(QuantumSeed::new(pair, data).ok()?)
    } else {
        let z = r
            .iter()
            .enumerate()
            .map(|(k, &rk)| {
                palindrome(
                    rk,
                    |s| {
                        if rng.gen_bool(0.5) {
                            ZEntry::Symbol(format!("z{}_{}", k + 1, s))
                        } else {
                            ZEntry::Int(rng.gen_range(1..=3).into())
                        }
                    },
                    ZEntry::one(),
                )
            })
            .collect();
        let data = MutationData::classical(r.clone(), z).ok()?;
        let seed = ClassicalSeed::new(b.clone(), data).ok()?;
        Seed::Classical {
            btilde: b,
            lambda: None,
            seed,
        }
    };
    let cs = seed.classical().ok()?;
    let states = run_path(seed.btilde(), &seed.data().r_i64(), &path).ok()?;
    let big = |m: &IMat| m.iter().any(|x| x.abs() > opts.max_vector_entry);
    if states.iter().any(|st| big(&st.c) || big(&st.g)) {
        return None;
    }
    let run = run_classical(&cs, &path).ok()?;
    let too_big = (1..=path.len()).any(|j| {
        run.f_poly(j, path[j - 1])
            .map(|f| f.poly().max_degree_in(&(0..n).collect::<Vec<_>>()) > opts.max_degree)
            .unwrap_or(true)
    });
    (!too_big).then_some((seed, path))
}

/// `count` reproducible instances; instance `i` depends only on
/// `(seed, i)`. Draws that are not skew-symmetrizable or exceed
/// `max_vector_entry` or `max_degree` are rejected and redrawn.
pub fn random_instances(seed: u64, count: usize, opts: &RandomOptions) -> Vec<Instance> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let quantum = opts.quantum && i % 2 == 0;
            loop {
                if let Some((s, path)) = draw(&mut rng, opts, quantum) {
                    let kind = if quantum { "quantum" } else { "classical" };
                    return Instance {
                        label: format!("random#{i} ({kind}, rank {}, path {})", s.n(), render_path(&path)),
                        seed: s,
                        path,
                    };
                }
            }
        })
        .collect()
}
