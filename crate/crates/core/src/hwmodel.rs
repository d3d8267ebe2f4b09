//! Circuit-level runtime model: ansatz circuits, decomposition into the
//! native set {RZ, SX, X, CX}, greedy SWAP routing onto a coupling map and
//! ASAP scheduling with per-gate durations.
//!
//! Rotation conventions match the simulator: `R_a(t) = exp(-i t A / 2)`,
//! and `Zz(p, q, t) = exp(-i t Z_p Z_q / 2)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::Qubo;
use crate::seed;
use crate::simulator::{self, Matrix2, StateVector};
use crate::variational::{AnsatzKind, AnsatzSpec};

use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Sx(usize),
    X(usize),
    Cx(usize, usize),
    Zz(usize, usize, f64),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
            Gate::Sx(_) => "sx",
            Gate::X(_) => "x",
            Gate::Cx(..) => "cx",
            Gate::Zz(..) => "zz",
        }
    }

    /// First qubit and, for two-qubit gates, the second.
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::Sx(q) | Gate::X(q) => (q, None),
            Gate::Cx(a, b) | Gate::Zz(a, b, _) => (a, Some(b)),
        }
    }

    pub fn is_native(&self) -> bool {
        matches!(self, Gate::Rz(..) | Gate::Sx(_) | Gate::X(_) | Gate::Cx(..))
    }

    fn remap(&self, map: &[usize]) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map[q]),
            Gate::Rx(q, t) => Gate::Rx(map[q], t),
            Gate::Ry(q, t) => Gate::Ry(map[q], t),
            Gate::Rz(q, t) => Gate::Rz(map[q], t),
            Gate::Sx(q) => Gate::Sx(map[q]),
            Gate::X(q) => Gate::X(map[q]),
            Gate::Cx(a, b) => Gate::Cx(map[a], map[b]),
            Gate::Zz(a, b, t) => Gate::Zz(map[a], map[b], t),
        }
    }

    /// 2x2 matrix of a single-qubit gate.
    pub fn matrix(&self) -> Option<Matrix2> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Some(match *self {
            Gate::H(_) => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
            Gate::Rx(_, t) => simulator::x_mixer_matrix(t / 2.0),
            Gate::Ry(_, t) => simulator::ry_matrix(t),
            Gate::Rz(_, t) => simulator::rz_matrix(t),
            Gate::Sx(_) => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
            Gate::X(_) => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Gate::Cx(..) | Gate::Zz(..) => return None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let (a, b) = gate.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= self.num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    len: self.num_qubits,
                });
            }
        }
        if b == Some(a) {
            return Err(Error::param("two-qubit gate needs distinct qubits"));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn is_native(&self) -> bool {
        self.gates.iter().all(Gate::is_native)
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }

    /// Applies the circuit to `state` in order.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::param("state and circuit disagree on the qubit count"));
        }
        for g in &self.gates {
            match *g {
                Gate::Cx(a, b) => state.apply_cx(a, b)?,
                Gate::Zz(a, b, t) => {
                    state.apply_cx(a, b)?;
                    state.apply_rz(b, t)?;
                    state.apply_cx(a, b)?;
                }
                _ => state.apply_single(g.qubits().0, &g.matrix().expect("single-qubit gate"))?,
            }
        }
        Ok(())
    }
}

/// Abstract circuit producing the ansatz state of `spec` for `qubo`.
///
/// The phase separator `exp(-i gamma H)` is written with `x = (1 - Z) / 2`:
/// each coupling `J x_p x_q` becomes `Zz(gamma J / 2)` plus `Rz(-gamma J / 2)`
/// on both qubits and each linear term `h x_p` becomes `Rz(-gamma h)`,
/// dropping the global phase.
pub fn ansatz_circuit(qubo: &Qubo, spec: &AnsatzSpec, params: &[f64]) -> Result<Circuit> {
    let n = spec.num_qubits();
    if qubo.num_vars() != n {
        return Err(Error::param("QUBO and ansatz disagree on the qubit count"));
    }
    if params.len() != spec.num_params() {
        return Err(Error::param(format!(
            "expected {} parameters, got {}",
            spec.num_params(),
            params.len()
        )));
    }
    let mut c = Circuit::new(n);
    if spec.kind() == AnsatzKind::Vqe {
        for (layer, angles) in params.chunks(n).enumerate() {
            c.gates.extend(angles.iter().enumerate().map(|(q, &t)| Gate::Ry(q, t)));
            if layer < spec.layers() {
                c.gates.extend((1..n).map(|q| Gate::Cx(q - 1, q)));
            }
        }
        return Ok(c);
    }
    let thetas: Option<Vec<f64>> = spec
        .c_star()
        .map(|cs| cs.iter().map(|&v| simulator::warm_start_angle(v)).collect());
    match &thetas {
        Some(t) => c.gates.extend(t.iter().enumerate().map(|(q, &a)| Gate::Ry(q, a))),
        None => c.gates.extend((0..n).map(Gate::H)),
    }
    let (gammas, betas) = params.split_at(spec.layers());
    for (&gamma, &beta) in gammas.iter().zip(betas) {
        let mut z: Vec<f64> = qubo.linear().iter().map(|h| -gamma * h).collect();
        for (&(p, q), &j) in qubo.quadratic() {
            c.gates.push(Gate::Zz(p, q, gamma * j / 2.0));
            z[p] -= gamma * j / 2.0;
            z[q] -= gamma * j / 2.0;
        }
        c.gates.extend(z.iter().enumerate().map(|(q, &a)| Gate::Rz(q, a)));
        match (spec.kind(), &thetas) {
            (AnsatzKind::WsQaoa, Some(t)) => {
                for (q, &a) in t.iter().enumerate() {
                    c.gates.extend([Gate::Ry(q, -a), Gate::Rz(q, -2.0 * beta), Gate::Ry(q, a)]);
                }
            }
            _ => c.gates.extend((0..n).map(|q| Gate::Rx(q, 2.0 * beta))),
        }
    }
    Ok(c)
}

fn push_native(out: &mut Vec<Gate>, g: Gate) {
    match g {
        Gate::H(q) => out.extend([Gate::Rz(q, FRAC_PI_2), Gate::Sx(q), Gate::Rz(q, FRAC_PI_2)]),
        Gate::Rx(q, t) => out.extend([
            Gate::Rz(q, FRAC_PI_2),
            Gate::Sx(q),
            Gate::Rz(q, t + PI),
            Gate::Sx(q),
            Gate::Rz(q, FRAC_PI_2),
        ]),
        Gate::Ry(q, t) => out.extend([Gate::Sx(q), Gate::Rz(q, t + PI), Gate::Sx(q), Gate::Rz(q, PI)]),
        Gate::Zz(a, b, t) => out.extend([Gate::Cx(a, b), Gate::Rz(b, t), Gate::Cx(a, b)]),
        native => out.push(native),
    }
}

/// Rewrites `circuit` over {RZ, SX, X, CX}, equal up to global phase.
/// Consecutive `Rz` on a qubit are merged and multiples of `2 pi` dropped.
pub fn decompose(circuit: &Circuit) -> Circuit {
    let mut raw = Vec::with_capacity(circuit.gates.len() * 4);
    for &g in &circuit.gates {
        push_native(&mut raw, g);
    }
    let n = circuit.num_qubits;
    let mut pending: Vec<Option<f64>> = vec![None; n];
    let mut out = Vec::with_capacity(raw.len());
    let flush = |q: usize, pending: &mut Vec<Option<f64>>, out: &mut Vec<Gate>| {
        if let Some(a) = pending[q].take() {
            let r = a.rem_euclid(2.0 * PI);
            if r > 1e-12 && 2.0 * PI - r > 1e-12 {
                out.push(Gate::Rz(q, a));
            }
        }
    };
    for g in raw {
        match g {
            Gate::Rz(q, a) => *pending[q].get_or_insert(0.0) += a,
            other => {
                let (a, b) = other.qubits();
                flush(a, &mut pending, &mut out);
                if let Some(b) = b {
                    flush(b, &mut pending, &mut out);
                }
                out.push(other);
            }
        }
    }
    for q in 0..n {
        flush(q, &mut pending, &mut out);
    }
    Circuit { num_qubits: n, gates: out }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDurations {
    pub rz: f64,
    pub sx: f64,
    pub x: f64,
    pub cx: f64,
    /// Half-width of the optional per-edge CX jitter.
    pub cx_spread: f64,
}

impl Default for GateDurations {
    fn default() -> Self {
        GateDurations {
            rz: 0.0,
            sx: 35.56,
            x: 35.56,
            cx: 370.0,
            cx_spread: 80.0,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceFile {
    name: String,
    num_qubits: usize,
    #[serde(default)]
    gate_durations_ns: GateDurations,
    #[serde(default = "default_t_meas")]
    t_meas_ns: f64,
    edges: Vec<(usize, usize)>,
}

fn default_t_meas() -> f64 {
    1000.0
}

/// Device coupling map and gate timings. Durations are in nanoseconds.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviceModel {
    name: String,
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    durations: GateDurations,
    t_meas_ns: f64,
    cx_edge_ns: BTreeMap<(usize, usize), f64>,
}

const HEAVY_HEX_65: &str = include_str!("../data/heavy_hex_65.json");

impl DeviceModel {
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: Vec<(usize, usize)>,
        durations: GateDurations,
        t_meas_ns: f64,
    ) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); num_qubits];
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= num_qubits || b >= num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    len: num_qubits,
                });
            }
            if a == b {
                return Err(Error::param(format!("self-loop on qubit {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !norm.contains(&e) {
                norm.push(e);
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        norm.sort_unstable();
        for row in &mut adjacency {
            row.sort_unstable();
        }
        let d = durations;
        if [d.rz, d.sx, d.x, d.cx, d.cx_spread, t_meas_ns].iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::param("durations must be non-negative"));
        }
        if d.cx_spread > d.cx {
            return Err(Error::param("CX spread exceeds the mean CX duration"));
        }
        Ok(DeviceModel {
            name: name.into(),
            num_qubits,
            edges: norm,
            adjacency,
            durations,
            t_meas_ns,
            cx_edge_ns: BTreeMap::new(),
        })
    }

    /// The 65-qubit heavy-hex device.
    pub fn heavy_hex_65() -> Self {
        DeviceModel::from_json(HEAVY_HEX_65).expect("bundled device file")
    }

    /// Linear chain `0 - 1 - ... - (n-1)` with default timings.
    pub fn line(n: usize) -> Self {
        let edges = (1..n).map(|q| (q - 1, q)).collect();
        DeviceModel::new(format!("line-{n}"), n, edges, GateDurations::default(), default_t_meas())
            .expect("line device")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: DeviceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "device".into(),
            message: e.to_string(),
        })?;
        DeviceModel::new(f.name, f.num_qubits, f.edges, f.gate_durations_ns, f.t_meas_ns)
    }

    pub fn to_json(&self) -> String {
        let f = DeviceFile {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            gate_durations_ns: self.durations,
            t_meas_ns: self.t_meas_ns,
            edges: self.edges.clone(),
        };
        serde_json::to_string_pretty(&f).expect("device serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
        DeviceModel::from_json(&text)
    }

    /// Copy with every edge's CX duration drawn uniformly from
    /// `cx +- cx_spread`, fixed by `seed`.
    pub fn with_cx_jitter(mut self, seed: u64) -> Self {
        let mut rng = seed::rng(seed);
        let d = self.durations;
        self.cx_edge_ns = self
            .edges
            .iter()
            .map(|&e| (e, d.cx + rng.gen_range(-d.cx_spread..=d.cx_spread)))
            .collect();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn durations(&self) -> &GateDurations {
        &self.durations
    }

    pub fn t_meas_ns(&self) -> f64 {
        self.t_meas_ns
    }

    pub fn are_coupled(&self, a: usize, b: usize) -> bool {
        a < self.num_qubits && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Duration of a native gate. `None` for non-native gates.
    pub fn duration(&self, gate: &Gate) -> Option<f64> {
        let d = &self.durations;
        Some(match *gate {
            Gate::Rz(..) => d.rz,
            Gate::Sx(_) => d.sx,
            Gate::X(_) => d.x,
            Gate::Cx(a, b) => *self.cx_edge_ns.get(&(a.min(b), a.max(b))).unwrap_or(&d.cx),
            _ => return None,
        })
    }

    /// Hop distances from `target`; `usize::MAX` where unreachable.
    fn distances_from(&self, target: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_qubits];
        let mut queue = VecDeque::from([target]);
        dist[target] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// A simple path of `len` physical qubits, searched depth-first from the
    /// lowest-numbered start.
    pub fn find_path(&self, len: usize) -> Option<Vec<usize>> {
        if len == 0 || len > self.num_qubits {
            return None;
        }
        let mut budget = 1_000_000usize;
        let mut used = vec![false; self.num_qubits];
        let mut path = Vec::with_capacity(len);
        fn dfs(dev: &DeviceModel, len: usize, path: &mut Vec<usize>, used: &mut [bool], budget: &mut usize) -> bool {
            if path.len() == len {
                return true;
            }
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let last = *path.last().expect("non-empty path");
            for &v in dev.neighbors(last) {
                if !used[v] {
                    used[v] = true;
                    path.push(v);
                    if dfs(dev, len, path, used, budget) {
                        return true;
                    }
                    path.pop();
                    used[v] = false;
                }
            }
            false
        }
        for start in 0..self.num_qubits {
            used[start] = true;
            path.push(start);
            if dfs(self, len, &mut path, &mut used, &mut budget) {
                return Some(path);
            }
            path.pop();
            used[start] = false;
        }
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialLayout {
    /// Logical qubit `i` on physical qubit `i`.
    Trivial,
    /// Logical qubits along a simple path of the coupling map, falling back
    /// to the trivial layout when none is found.
    #[default]
    Path,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoutedCircuit {
    /// Native circuit over physical qubits.
    pub circuit: Circuit,
    /// `initial_layout[logical] = physical` at the start.
    pub initial_layout: Vec<usize>,
    /// `final_layout[logical] = physical` after all SWAPs.
    pub final_layout: Vec<usize>,
    pub swap_count: usize,
}

/// Greedy routing: whenever a CX acts on uncoupled qubits, the control is
/// swapped along a shortest path toward the target (ties broken by `seed`)
/// until the two are adjacent. Each SWAP is emitted as three CX.
pub fn route(circuit: &Circuit, device: &DeviceModel, layout: InitialLayout, seed: u64) -> Result<RoutedCircuit> {
    if !circuit.is_native() {
        return Err(Error::Unsupported("routing needs a native circuit; call decompose first".into()));
    }
    let n = circuit.num_qubits;
    if n > device.num_qubits {
        return Err(Error::Routing(format!(
            "{n} logical qubits exceed the {} physical qubits",
            device.num_qubits
        )));
    }
    let initial: Vec<usize> = match layout {
        InitialLayout::Path => device.find_path(n).unwrap_or_else(|| (0..n).collect()),
        InitialLayout::Trivial => (0..n).collect(),
    };
    let mut l2p = initial.clone();
    let mut p2l: Vec<Option<usize>> = vec![None; device.num_qubits];
    for (l, &p) in l2p.iter().enumerate() {
        p2l[p] = Some(l);
    }
    let mut rng = seed::rng(seed);
    let mut out = Circuit::new(device.num_qubits);
    let mut swaps = 0;
    let mut dist_cache: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in &circuit.gates {
        if let Gate::Cx(a, b) = *g {
            loop {
                let (pa, pb) = (l2p[a], l2p[b]);
                if device.are_coupled(pa, pb) {
                    break;
                }
                let dist = dist_cache.entry(pb).or_insert_with(|| device.distances_from(pb));
                if dist[pa] == usize::MAX {
                    return Err(Error::Routing(format!("physical qubits {pa} and {pb} are not connected")));
                }
                let mut steps: Vec<usize> = device
                    .neighbors(pa)
                    .iter()
                    .copied()
                    .filter(|&v| dist[v] + 1 == dist[pa])
                    .collect();
                steps.shuffle(&mut rng);
                let next = steps[0];
                out.gates.extend([Gate::Cx(pa, next), Gate::Cx(next, pa), Gate::Cx(pa, next)]);
                swaps += 1;
                let moved = p2l[next];
                p2l.swap(pa, next);
                l2p[a] = next;
                if let Some(m) = moved {
                    l2p[m] = pa;
                }
            }
        }
        out.gates.push(g.remap(&l2p));
    }
    Ok(RoutedCircuit {
        circuit: out,
        initial_layout: initial,
        final_layout: l2p,
        swap_count: swaps,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduledGate {
    pub gate: Gate,
    pub start_ns: f64,
    pub duration_ns: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduledCircuit {
    pub gates: Vec<ScheduledGate>,
    /// Gate layers, counting every gate including zero-duration `Rz`.
    pub depth: usize,
    /// Makespan in nanoseconds.
    pub t_circ_ns: f64,
    pub swap_count: usize,
}

impl ScheduledCircuit {
    pub fn t_circ_seconds(&self) -> f64 {
        self.t_circ_ns * 1e-9
    }

    /// One line per gate: `gate,qubits,start_ns,duration_ns`, qubits joined
    /// by `;`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("gate,qubits,start_ns,duration_ns\n");
        for g in &self.gates {
            let (a, b) = g.gate.qubits();
            let qubits = match b {
                Some(b) => format!("{a};{b}"),
                None => a.to_string(),
            };
            writeln!(s, "{},{},{},{}", g.gate.name(), qubits, g.start_ns, g.duration_ns).expect("string write");
        }
        s
    }
}

/// ASAP schedule: each gate starts when all of its qubits are free.
pub fn schedule(circuit: &Circuit, device: &DeviceModel) -> Result<ScheduledCircuit> {
    if circuit.num_qubits > device.num_qubits {
        return Err(Error::Routing("circuit is wider than the device".into()));
    }
    let mut ready = vec![0.0f64; circuit.num_qubits];
    let mut level = vec![0usize; circuit.num_qubits];
    let mut gates = Vec::with_capacity(circuit.gates.len());
    for g in &circuit.gates {
        let duration = device
            .duration(g)
            .ok_or_else(|| Error::Unsupported(format!("gate {} is not native", g.name())))?;
        let (a, b) = g.qubits();
        let (start, lvl) = match b {
            Some(b) => {
                if !device.are_coupled(a, b) {
                    return Err(Error::Routing(format!("CX on uncoupled qubits {a} and {b}")));
                }
                (ready[a].max(ready[b]), level[a].max(level[b]) + 1)
            }
            None => (ready[a], level[a] + 1),
        };
        for q in std::iter::once(a).chain(b) {
            ready[q] = start + duration;
            level[q] = lvl;
        }
        gates.push(ScheduledGate {
            gate: *g,
            start_ns: start,
            duration_ns: duration,
        });
    }
    Ok(ScheduledCircuit {
        gates,
        depth: level.into_iter().max().unwrap_or(0),
        t_circ_ns: ready.into_iter().fold(0.0, f64::max),
        swap_count: 0,
    })
}

/// Decompose, route and schedule an abstract circuit.
pub fn compile_for_device(
    circuit: &Circuit,
    device: &DeviceModel,
    layout: InitialLayout,
    seed: u64,
) -> Result<(RoutedCircuit, ScheduledCircuit)> {
    let native = decompose(circuit);
    let routed = route(&native, device, layout, seed)?;
    let mut sched = schedule(&routed.circuit, device)?;
    sched.swap_count = routed.swap_count;
    Ok((routed, sched))
}

/// `T = n_iter * (n_samp * (t_circ + t_meas) + t_opt + t_comm)`, all times
/// in seconds.
pub fn total_runtime(n_iter: f64, n_samp: f64, t_circ: f64, t_meas: f64, t_opt: f64, t_comm: f64) -> Result<f64> {
    let inputs = [n_iter, n_samp, t_circ, t_meas, t_opt, t_comm];
    if inputs.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::param("runtime inputs must be finite and non-negative"));
    }
    Ok(n_iter * (n_samp * (t_circ + t_meas) + t_opt + t_comm))
}

/// Classical-side timings, in seconds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassicalTimings {
    pub t_meas: f64,
    pub t_opt: f64,
    pub t_comm: f64,
}

impl Default for ClassicalTimings {
    fn default() -> Self {
        ClassicalTimings {
            t_meas: 1e-6,
            t_opt: 1e-3,
            t_comm: 0.0,
        }
    }
}
