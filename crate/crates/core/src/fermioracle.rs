//! Dense-matrix checks in the occupation basis.
//!
//! Basis state `x` has mode `p` occupied when bit `p` of `x` is set; mode 0
//! is the least significant bit. Jordan-Wigner strings run over the modes
//! below `p`. Line position `p` of a network is mode `p`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_size, invalid, Error, Result};
use crate::isoperimetry::LinearOrder;
use crate::lattice::{interaction_graph, HubbardModel, TermKind};
use crate::synth::{Layer, SwapNetwork};
use crate::verify::simulate;

pub type ComplexMatrix = DMatrix<Complex64>;

pub const MAX_MODES: usize = 10;
pub const MAX_TROTTER_MODES: usize = 8;
pub const RATIO_RANGE: (f64, f64) = (3.2, 4.8);
const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITERS: usize = 20_000;
const UNIT_TOL: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Sign from the modes below `p` and the state after removing mode `p`.
fn annihilate(x: usize, p: usize) -> Option<(f64, usize)> {
    if x >> p & 1 == 0 {
        return None;
    }
    let below = (x & ((1 << p) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((sign, x ^ (1 << p)))
}

fn create(x: usize, p: usize) -> Option<(f64, usize)> {
    if x >> p & 1 == 1 {
        return None;
    }
    let below = (x & ((1 << p) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((sign, x | (1 << p)))
}

/// Annihilation operator on mode `p` of `n_modes`.
pub fn jw_ladder(p: usize, n_modes: usize) -> Result<ComplexMatrix> {
    check_size(n_modes, MAX_MODES)?;
    if p >= n_modes {
        return Err(invalid(format!("mode {p} out of range for {n_modes} modes")));
    }
    let dim = 1 << n_modes;
    let mut a = ComplexMatrix::zeros(dim, dim);
    for x in 0..dim {
        if let Some((s, y)) = annihilate(x, p) {
            a[(y, x)] = c(s);
        }
    }
    Ok(a)
}

/// Two-mode fermionic swap: exchanges the modes and puts a sign on the
/// doubly occupied state.
pub fn fswap_unitary() -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(4, 4);
    f[(0, 0)] = c(1.0);
    f[(1, 2)] = c(1.0);
    f[(2, 1)] = c(1.0);
    f[(3, 3)] = c(-1.0);
    f
}

/// Two-body and site terms of a model, in vertex indices.
struct Terms {
    hops: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    sites: Vec<usize>,
}

fn model_terms(m: &HubbardModel) -> Result<Terms> {
    let ig = interaction_graph(m)?;
    let mut t = Terms {
        hops: Vec::new(),
        pairs: Vec::new(),
        sites: ig.site_terms().to_vec(),
    };
    for e in ig.edges() {
        match e.kind {
            TermKind::Hop => t.hops.push((e.a, e.b)),
            TermKind::OnsitePair => t.pairs.push((e.a, e.b)),
            TermKind::NumberOp => {}
        }
    }
    Ok(t)
}

/// Hamiltonian with vertex `v` on mode `order.rank(v)`: hops carry `−t`,
/// on-site pairs `U n n`, spinless sites `U n`.
pub fn hubbard_matrix(m: &HubbardModel, order: &LinearOrder) -> Result<ComplexMatrix> {
    let n = m.num_modes();
    check_size(n, MAX_MODES)?;
    if order.len() != n {
        return Err(invalid(format!("order has {} entries for {n} modes", order.len())));
    }
    let terms = model_terms(m)?;
    let dim = 1 << n;
    let mut h = ComplexMatrix::zeros(dim, dim);
    for x in 0..dim {
        let occ = |v: usize| (x >> order.rank(v) & 1) as f64;
        let mut diag = 0.0;
        for &(a, b) in &terms.pairs {
            diag += m.u * occ(a) * occ(b);
        }
        for &s in &terms.sites {
            diag += m.u * occ(s);
        }
        h[(x, x)] += c(diag);
        for &(a, b) in &terms.hops {
            let (pa, pb) = (order.rank(a), order.rank(b));
            for (from, to) in [(pb, pa), (pa, pb)] {
                if let Some((s1, y)) = annihilate(x, from) {
                    if let Some((s2, z)) = create(y, to) {
                        h[(z, x)] += c(-m.t * s1 * s2);
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Left-multiplies `state` by `gate` acting on modes `p` (and `p + 1` for
/// a 4×4 gate), local index = bit `p` + 2·bit `p + 1`.
fn apply_local(state: &mut ComplexMatrix, gate: &ComplexMatrix, p: usize) {
    let dim = state.nrows();
    let width = if gate.nrows() == 4 { 2 } else { 1 };
    let mask = ((1 << width) - 1) << p;
    let k = gate.nrows();
    let mut buf = vec![Complex64::new(0.0, 0.0); k];
    for col in 0..state.ncols() {
        for base in 0..dim {
            if base & mask != 0 {
                continue;
            }
            let idx = |l: usize| base | (l << p);
            for (r, slot) in buf.iter_mut().enumerate() {
                *slot = (0..k).map(|l| gate[(r, l)] * state[(idx(l), col)]).sum();
            }
            for (r, &val) in buf.iter().enumerate() {
                state[(idx(r), col)] = val;
            }
        }
    }
}

/// Product of the network's swap layers alone.
fn swap_circuit(net: &SwapNetwork) -> ComplexMatrix {
    let dim = 1 << net.num_positions();
    let mut u = ComplexMatrix::identity(dim, dim);
    let f = fswap_unitary();
    for layer in net.layers() {
        if let Layer::Swap(at) = layer {
            for &i in at {
                apply_local(&mut u, &f, i);
            }
        }
    }
    u
}

/// The fswap circuit must send each occupation state to the permuted state
/// with sign `(−1)^inv`, where `inv` counts inversions of the position
/// permutation among occupied positions.
pub fn mode_permutation_check(net: &SwapNetwork) -> Result<bool> {
    let n = net.num_positions();
    check_size(n, MAX_MODES)?;
    let trace = simulate(net)?;
    let (first, last) = (&trace[0], trace.last().expect("non-empty trace"));
    let perm: Vec<usize> = (0..n).map(|p| last.rank(first.at(p))).collect();
    let u = swap_circuit(net);
    let dim = 1 << n;
    for x in 0..dim {
        let occupied: Vec<usize> = (0..n).filter(|&p| x >> p & 1 == 1).collect();
        let y = occupied.iter().fold(0usize, |acc, &p| acc | 1 << perm[p]);
        let mut inv = 0;
        for (i, &p) in occupied.iter().enumerate() {
            for &q in &occupied[i + 1..] {
                if perm[p] > perm[q] {
                    inv += 1;
                }
            }
        }
        let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
        for row in 0..dim {
            let want = if row == y { sign } else { 0.0 };
            if (u[(row, x)] - c(want)).norm() > UNIT_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Local term matrix on one or two adjacent modes.
fn local_term(m: &HubbardModel, term: TermKind) -> ComplexMatrix {
    match term {
        TermKind::NumberOp => {
            let mut h = ComplexMatrix::zeros(2, 2);
            h[(1, 1)] = c(m.u);
            h
        }
        TermKind::OnsitePair => {
            let mut h = ComplexMatrix::zeros(4, 4);
            h[(3, 3)] = c(m.u);
            h
        }
        TermKind::Hop => {
            let a0 = jw_ladder(0, 2).expect("two modes");
            let a1 = jw_ladder(1, 2).expect("two modes");
            (a0.adjoint() * &a1 + a1.adjoint() * &a0) * c(-m.t)
        }
    }
}

fn evolve(h: &ComplexMatrix, dt: f64) -> ComplexMatrix {
    (h * Complex64::new(0.0, -dt)).exp()
}

/// First-order product of the network's interaction records, in the
/// initial mode order: the full circuit followed by undoing its swaps.
pub fn trotter_unitary(m: &HubbardModel, net: &SwapNetwork, dt: f64) -> Result<ComplexMatrix> {
    let n = net.num_positions();
    check_size(n, MAX_TROTTER_MODES)?;
    if interaction_graph(m)?.grid() != net.grid() {
        return Err(Error::MalformedNetwork("network is not on the model's lattice".into()));
    }
    simulate(net)?;
    let dim = 1 << n;
    let f = fswap_unitary();
    let gates: Vec<(TermKind, ComplexMatrix)> =
        [TermKind::Hop, TermKind::OnsitePair, TermKind::NumberOp]
            .into_iter()
            .map(|k| (k, evolve(&local_term(m, k), dt)))
            .collect();
    let gate = |k: TermKind| &gates.iter().find(|g| g.0 == k).expect("all kinds").1;
    let mut u = ComplexMatrix::identity(dim, dim);
    for layer in net.layers() {
        match layer {
            Layer::Swap(at) => {
                for &i in at {
                    apply_local(&mut u, &f, i);
                }
            }
            Layer::Interact(recs) => {
                for r in recs {
                    apply_local(&mut u, gate(r.term), r.at);
                }
            }
        }
    }
    Ok(swap_circuit(net).adjoint() * u)
}

/// Largest singular value by power iteration on `AᴴA`.
pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    let n = a.ncols();
    if n == 0 {
        return 0.0;
    }
    let ata = a.adjoint() * a;
    let mut v = nalgebra::DVector::from_fn(n, |i, _| c(1.0 + 0.37 * ((i as f64) * 1.3).sin()));
    let mut lambda = 0.0;
    for _ in 0..POWER_MAX_ITERS {
        let norm = v.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v /= c(norm);
        let w = &ata * &v;
        let next = w.norm();
        let done = (next - lambda).abs() <= POWER_TOL * next.max(1.0);
        lambda = next;
        v = w;
        if done {
            break;
        }
    }
    lambda.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrotterReport {
    pub err: f64,
    /// `err(Δt) / err(Δt/2)`; absent when the half-step error vanishes.
    pub ratio: Option<f64>,
}

impl TrotterReport {
    pub fn ratio_in_range(&self) -> bool {
        self.ratio
            .is_some_and(|r| (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&r))
    }
}

pub fn trotter_error_check(m: &HubbardModel, net: &SwapNetwork, dt: f64) -> Result<TrotterReport> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(invalid(format!("time step must be positive, got {dt}")));
    }
    let h = hubbard_matrix(m, net.initial_order())?;
    let err_at = |step: f64| -> Result<f64> {
        let exact = evolve(&h, step);
        Ok(spectral_norm(&(exact - trotter_unitary(m, net, step)?)))
    };
    let err = err_at(dt)?;
    let half = err_at(dt / 2.0)?;
    Ok(TrotterReport {
        err,
        ratio: (half > 0.0).then(|| err / half),
    })
}
