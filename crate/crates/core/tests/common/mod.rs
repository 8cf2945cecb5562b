//! Brute-force oracles and seeded corpora shared by the integration suites.
//!
//! None of the oracles call the library deciders; they work on the local rule
//! as a function of window words.

#![allow(dead_code)]

use std::collections::VecDeque;

use finpow::additive::AdditiveCaRule;
use finpow::lca::{FiniteConfiguration, LcaRule};
use finpow::power_semigroup::LaurentMatrix;
use finpow::{LaurentPoly, Modulus, Residue, Ring, RingMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Local rules over a finite alphabet of symbol indices (0 is the zero element)

pub struct LocalRule {
    pub alphabet: usize,
    pub radius: usize,
    /// Output symbol for a window `c_{i-r} … c_{i+r}`.
    pub f: Box<dyn Fn(&[usize]) -> usize>,
}

/// Mixed-radix encoding of vectors with per-coordinate orders.
pub fn encode(v: &[u64], orders: &[u64]) -> usize {
    v.iter()
        .zip(orders)
        .rev()
        .fold(0usize, |acc, (&x, &q)| acc * q as usize + x as usize)
}

pub fn decode(mut s: usize, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&q| {
            let d = (s % q as usize) as u64;
            s /= q as usize;
            d
        })
        .collect()
}

pub fn lca_local_rule(rule: &LcaRule) -> LocalRule {
    let m = rule.m();
    let n = rule.dim();
    let r = rule.radius();
    let orders = vec![m; n];
    let mats: Vec<Vec<Vec<u64>>> = rule
        .matrices()
        .iter()
        .map(|a| {
            (0..n)
                .map(|i| a.row(i).iter().map(Residue::value).collect())
                .collect()
        })
        .collect();
    LocalRule {
        alphabet: m.pow(n as u32) as usize,
        radius: r,
        f: Box::new(move |w: &[usize]| {
            let mut out = vec![0u64; n];
            for (k, &sym) in w.iter().enumerate() {
                let v = decode(sym, &orders);
                for (i, slot) in out.iter_mut().enumerate() {
                    for (j, &x) in v.iter().enumerate() {
                        *slot = (*slot + mats[k][i][j] * x) % m;
                    }
                }
            }
            encode(&out, &orders)
        }),
    }
}

pub fn additive_local_rule(rule: &AdditiveCaRule) -> LocalRule {
    let group = rule.group().clone();
    let orders: Vec<u64> = (0..group.rank()).map(|i| group.factor_order(i)).collect();
    let endos: Vec<_> = rule.endos().to_vec();
    LocalRule {
        alphabet: group.order() as usize,
        radius: rule.radius(),
        f: Box::new(move |w: &[usize]| {
            let mut out = vec![0u64; orders.len()];
            for (k, &sym) in w.iter().enumerate() {
                let img = endos[k].apply(&group, &decode(sym, &orders));
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = (*slot + img[i]) % orders[i];
                }
            }
            encode(&out, &orders)
        }),
    }
}

/// Zero-output edges of the de Bruijn graph: `(from, to, window word)` with
/// vertices the words of length `2r`.
struct ZeroGraph {
    vertices: usize,
    edges: Vec<(usize, usize, usize)>,
}

fn zero_graph(rule: &LocalRule) -> ZeroGraph {
    let s = rule.alphabet;
    let w = 2 * rule.radius + 1;
    let vertices = s.pow(2 * rule.radius as u32);
    let total = s.pow(w as u32);
    let mut edges = Vec::new();
    let mut window = vec![0usize; w];
    for word in 0..total {
        let mut x = word;
        for slot in window.iter_mut().rev() {
            *slot = x % s;
            x /= s;
        }
        if (rule.f)(&window) == 0 {
            edges.push((word / s, word % vertices, word));
        }
    }
    ZeroGraph { vertices, edges }
}

/// Surjectivity by balance counting over window lengths.
///
/// For additive rules the preimage count of every reachable word of length
/// `L` equals `c_L`, the number of preimages of `0^L`, and the CA is onto iff
/// `c_L = |S|^{2r}` for all `L`. Writing `H_L` for the set of end-vertices of
/// zero paths of length `L`, `c_{L+1}/c_L` depends only on `H_L`, and `H_L` is
/// a decreasing chain of subgroups of the vertex group, so it is constant from
/// `L = log₂ V` on. Checking every `L ≤ ⌈log₂ V⌉ + 2` therefore decides.
pub fn balance_surjective(rule: &LocalRule) -> bool {
    let g = zero_graph(rule);
    let target = g.vertices as u128;
    let horizon = (usize::BITS - g.vertices.saturating_sub(1).leading_zeros()) as usize + 2;
    let mut counts = vec![1u128; g.vertices];
    for _ in 0..horizon {
        let mut next = vec![0u128; g.vertices];
        for &(u, v, _) in &g.edges {
            next[v] = next[v].saturating_add(counts[u]);
        }
        counts = next;
        let total = counts.iter().fold(0u128, |a, &c| a.saturating_add(c));
        if total != target {
            return false;
        }
    }
    true
}

/// Single-window balance: every symbol has exactly `|S|^{2r}` preimage windows.
pub fn single_window_balanced(rule: &LocalRule) -> bool {
    let s = rule.alphabet;
    let w = 2 * rule.radius + 1;
    let mut hits = vec![0usize; s];
    let mut window = vec![0usize; w];
    for word in 0..s.pow(w as u32) {
        let mut x = word;
        for slot in window.iter_mut().rev() {
            *slot = x % s;
            x /= s;
        }
        hits[(rule.f)(&window)] += 1;
    }
    hits.iter().all(|&h| h == s.pow(2 * rule.radius as u32))
}

fn strongly_connected(g: &ZeroGraph) -> Vec<usize> {
    // Kosaraju with explicit stacks
    let n = g.vertices;
    let mut fwd = vec![Vec::new(); n];
    let mut back = vec![Vec::new(); n];
    for &(u, v, _) in &g.edges {
        fwd[u].push(v);
        back[v].push(u);
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < fwd[v].len() {
                let w = fwd[v][top.1];
                top.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut label = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = label;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in &back[v] {
                if comp[u] == usize::MAX {
                    comp[u] = label;
                    stack.push(u);
                }
            }
        }
        label += 1;
    }
    comp
}

/// Window words along a shortest zero path from `from` to `to`.
fn shortest_path(g: &ZeroGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertices];
    for &(u, v, word) in &g.edges {
        adj[u].push((v, word));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.vertices];
    let mut seen = vec![false; g.vertices];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut words = Vec::new();
            let mut cur = to;
            while cur != from {
                let (p, word) = prev[cur].expect("reached");
                words.push(word);
                cur = p;
            }
            words.reverse();
            return Some(words);
        }
        for &(w, word) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, word));
                queue.push_back(w);
            }
        }
    }
    None
}

/// `(periodic, finite)` kernel witnesses, as cell words.
///
/// Non-injective iff some cycle of the zero-output graph carries a nonzero
/// window: that cycle spells a periodic kernel element, and any nonzero
/// bi-infinite zero path either lies on such a cycle or returns to the zero
/// loop on both sides. A finite-support kernel element exists iff the zero
/// vertex's component carries a nonzero window.
pub fn kernel_witnesses(rule: &LocalRule) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
    let g = zero_graph(rule);
    let s = rule.alphabet;
    let comp = strongly_connected(&g);
    let on_cycle = |&&(u, v, word): &&(usize, usize, usize)| word != 0 && comp[u] == comp[v];
    // each edge appends the last cell of its window
    let periodic = g.edges.iter().find(on_cycle).map(|&(u, v, word)| {
        let mut words = vec![word];
        words.extend(shortest_path(&g, v, u).expect("same component"));
        words.iter().map(|&w| w % s).collect::<Vec<_>>()
    });
    let finite = g
        .edges
        .iter()
        .filter(on_cycle)
        .find(|&&(u, _, _)| comp[u] == comp[0])
        .map(|&(u, v, word)| {
            let mut words = shortest_path(&g, 0, u).expect("same component");
            words.push(word);
            words.extend(shortest_path(&g, v, 0).expect("same component"));
            let symbols: Vec<usize> = words.iter().map(|&w| w % s).collect();
            let lo = symbols.iter().position(|&x| x != 0).unwrap_or(0);
            let hi = symbols.iter().rposition(|&x| x != 0).unwrap_or(0);
            symbols[lo..=hi].to_vec()
        });
    (periodic, finite)
}

/// Whether every window of the periodic word maps to zero on a torus.
pub fn periodic_in_kernel(rule: &LocalRule, period: &[usize]) -> bool {
    let w = 2 * rule.radius + 1;
    let p = period.len();
    if p == 0 || period.iter().all(|&x| x == 0) {
        return false;
    }
    (0..p).all(|t| {
        let window: Vec<usize> = (0..w).map(|k| period[(t + k) % p]).collect();
        (rule.f)(&window) == 0
    })
}

pub fn to_config(symbols: &[usize], m: u64, orders: &[u64]) -> FiniteConfiguration {
    let mut c = FiniteConfiguration::new(m, orders.len());
    for (i, &s) in symbols.iter().enumerate() {
        c.set(i as i64, decode(s, orders)).unwrap();
    }
    c
}

// ---------------------------------------------------------------------------
// Determinants and bounded transitivity

/// Cofactor expansion along the first row.
pub fn laplace_det<R: Ring>(a: &RingMatrix<R>) -> R {
    let n = a.rows();
    let ctx = a.ctx().clone();
    if n == 0 {
        return R::one(&ctx);
    }
    let mut acc = R::zero(&ctx);
    for j in 0..n {
        let e = a.get(0, j);
        if e.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = laplace_det(&a.principal_submatrix(&rows, &cols).unwrap());
        let term = e.times(&minor);
        acc = if j % 2 == 0 {
            acc.plus(&term)
        } else {
            acc.minus(&term)
        };
    }
    acc
}

fn det_nonzero_mod_every_prime(d: &LaurentPoly) -> bool {
    Modulus::new(d.modulus())
        .unwrap()
        .primes()
        .all(|p| !d.reduce(p).unwrap().is_zero())
}

/// `F` surjective and `F^k - I` surjective for every `1 ≤ k ≤ kmax`.
pub fn bounded_transitive(rule: &LcaRule, kmax: u64) -> bool {
    let a = rule.associated_matrix();
    if !det_nonzero_mod_every_prime(&laplace_det(&a)) {
        return false;
    }
    let id = RingMatrix::identity(rule.m(), rule.dim());
    let mut power = id.clone();
    for _ in 0..kmax {
        power = power.try_mul(&a).unwrap();
        if !det_nonzero_mod_every_prime(&laplace_det(&power.try_sub(&id).unwrap())) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Corpora

pub const MATRIX_MODULI: [u64; 7] = [2, 3, 4, 6, 8, 9, 12];

fn radical(m: u64) -> u64 {
    Modulus::new(m).unwrap().radical()
}

/// A Laurent polynomial with support in `[-1, 1]`. `kind` selects a constant,
/// a constant plus nilpotent terms, or arbitrary coefficients.
pub fn random_entry(rng: &mut ChaCha8Rng, m: u64) -> LaurentPoly {
    let rad = radical(m);
    let kind = rng.gen_range(0..6);
    let terms: Vec<(i64, i64)> = (-1..=1)
        .map(|e| {
            let c = match kind {
                0 => 0,
                1 | 2 if e != 0 => 0,
                3 if e != 0 => (rad * rng.gen_range(0..m)) as i64,
                _ => rng.gen_range(0..m) as i64,
            };
            (e, c)
        })
        .collect();
    LaurentPoly::from_terms(m, terms)
}

pub fn random_laurent_matrix(rng: &mut ChaCha8Rng, n: usize, m: u64) -> LaurentMatrix {
    let shape = rng.gen_range(0..3);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // shape 1: upper triangular, shape 2: diagonal with constant entries
                    match shape {
                        1 if i > j => LaurentPoly::zero(m),
                        2 if i != j => LaurentPoly::zero(m),
                        2 => LaurentPoly::constant(rng.gen_range(0..m) as i64, m),
                        _ => random_entry(rng, m),
                    }
                })
                .collect()
        })
        .collect();
    RingMatrix::from_rows(m, rows).unwrap()
}

/// `(n, m, A)` triples with `n ≤ 3`, `m` from [`MATRIX_MODULI`].
pub fn matrix_corpus(seed: u64, count: usize) -> Vec<LaurentMatrix> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=3);
            let m = *MATRIX_MODULI.choose(&mut r).unwrap();
            random_laurent_matrix(&mut r, n, m)
        })
        .collect()
}

/// Random `n×n` matrices over `Z/m` with a bias towards zero entries.
pub fn random_residue_matrix(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: u64,
    zero_bias: f64,
) -> RingMatrix<Residue> {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(zero_bias) {
                        Residue::new(0, m)
                    } else {
                        Residue::new(rng.gen_range(0..m) as i64, m)
                    }
                })
                .collect()
        })
        .collect();
    RingMatrix::from_rows(m, rows).unwrap()
}

pub fn random_lca(rng: &mut ChaCha8Rng, m: u64, n: usize, r: usize) -> LcaRule {
    let bias = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
    let mats = (0..2 * r + 1)
        .map(|_| random_residue_matrix(rng, n, m, bias))
        .collect();
    LcaRule::new(m, n, mats).unwrap()
}

/// Linear rules with `n ≤ 2`, `r ≤ 1` over the given moduli.
pub fn lca_corpus(seed: u64, count: usize, moduli: &[u64]) -> Vec<LcaRule> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let m = *moduli.choose(&mut r).unwrap();
            let n = r.gen_range(1..=2);
            let radius = r.gen_range(0..=1);
            random_lca(&mut r, m, n, radius)
        })
        .collect()
}

/// Nilpotent `N` (strictly upper triangular plus nilpotent scalars on the
/// diagonal) conjugated by a product of random elementary matrices.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, n: usize, m: u64) -> RingMatrix<Residue> {
    let rad = radical(m);
    let mut nmat = RingMatrix::zero(m, n, n);
    for i in 0..n {
        nmat.set(i, i, Residue::new((rad * rng.gen_range(0..m)) as i64, m));
        for j in i + 1..n {
            nmat.set(i, j, Residue::new(rng.gen_range(0..m) as i64, m));
        }
    }
    let mut p = RingMatrix::identity(m, n);
    let mut p_inv = RingMatrix::identity(m, n);
    for _ in 0..3 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(1..m) as i64;
        let mut e = RingMatrix::identity(m, n);
        e.set(i, j, Residue::new(c, m));
        let mut e_inv = RingMatrix::identity(m, n);
        e_inv.set(i, j, Residue::new(-c, m));
        p = p.try_mul(&e).unwrap();
        p_inv = e_inv.try_mul(&p_inv).unwrap();
    }
    p.try_mul(&nmat).unwrap().try_mul(&p_inv).unwrap()
}

pub const PRIME_POWERS: [u64; 10] = [2, 4, 8, 16, 3, 9, 27, 5, 25, 7];

/// Factor orders with product at most `max_order`.
pub fn random_group_orders(rng: &mut ChaCha8Rng, max_order: u64) -> Vec<u64> {
    loop {
        let k = rng.gen_range(1..=4);
        let orders: Vec<u64> = (0..k).map(|_| *PRIME_POWERS.choose(rng).unwrap()).collect();
        if orders.iter().product::<u64>() <= max_order {
            return orders;
        }
    }
}

/// A random well-formed endomorphism matrix in input coordinates.
pub fn random_endo(rng: &mut ChaCha8Rng, orders: &[u64], zero_bias: f64) -> Vec<Vec<i64>> {
    let factor = |q: u64| Modulus::new(q).unwrap().factors()[0];
    (0..orders.len())
        .map(|i| {
            (0..orders.len())
                .map(|j| {
                    let (fi, fj) = (factor(orders[i]), factor(orders[j]));
                    if fi.prime != fj.prime || rng.gen_bool(zero_bias) {
                        return 0;
                    }
                    let v = rng.gen_range(0..orders[i]) as i64;
                    if fi.exponent > fj.exponent {
                        v * fi.prime.pow(fi.exponent - fj.exponent) as i64
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

pub fn random_additive(rng: &mut ChaCha8Rng, max_order: u64) -> AdditiveCaRule {
    let orders = random_group_orders(rng, max_order);
    let r = rng.gen_range(0..=1);
    let bias = [0.3, 0.6][rng.gen_range(0..2)];
    let mats: Vec<Vec<Vec<i64>>> = (0..2 * r + 1)
        .map(|_| random_endo(rng, &orders, bias))
        .collect();
    AdditiveCaRule::from_input(&orders, &mats).unwrap()
}

/// A random finitely supported configuration over the rule's group, cells in `[-w, w]`.
pub fn random_group_config(
    rng: &mut ChaCha8Rng,
    rule: &AdditiveCaRule,
    w: i64,
) -> FiniteConfiguration {
    let g = rule.group();
    let mut c = rule.empty_config();
    for pos in -w..=w {
        if rng.gen_bool(0.5) {
            let v = (0..g.rank())
                .map(|i| rng.gen_range(0..g.factor_order(i)))
                .collect();
            c.set(pos, v).unwrap();
        }
    }
    c
}
