//! Multi-knapsack instances, their qubit layout and the on-disk format.

use std::fs;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

/// `N` items with weights, `M` knapsacks with capacities and a per-knapsack
/// value for every item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct KnapsackInstance {
    name: String,
    weights: Vec<u64>,
    values: Vec<Vec<u64>>,
    capacities: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: String,
    weights: Vec<u64>,
    values: Vec<Vec<u64>>,
    capacities: Vec<u64>,
}

impl TryFrom<RawInstance> for KnapsackInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        KnapsackInstance::new(raw.name, raw.weights, raw.values, raw.capacities)
    }
}

impl From<KnapsackInstance> for RawInstance {
    fn from(inst: KnapsackInstance) -> Self {
        RawInstance {
            name: inst.name,
            weights: inst.weights,
            values: inst.values,
            capacities: inst.capacities,
        }
    }
}

impl KnapsackInstance {
    /// `values[i][j]` is the value of item `j` in knapsack `i`.
    pub fn new(
        name: impl Into<String>,
        weights: Vec<u64>,
        values: Vec<Vec<u64>>,
        capacities: Vec<u64>,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::param("instance needs at least one item"));
        }
        if capacities.is_empty() {
            return Err(Error::param("instance needs at least one knapsack"));
        }
        if let Some(i) = capacities.iter().position(|&c| c == 0) {
            return Err(Error::param(format!("capacity of knapsack {i} must be >= 1")));
        }
        if values.len() != capacities.len() {
            return Err(Error::param(format!(
                "values has {} rows but there are {} knapsacks",
                values.len(),
                capacities.len()
            )));
        }
        if let Some((i, row)) = values
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != weights.len())
        {
            return Err(Error::param(format!(
                "values row {i} has {} entries but there are {} items",
                row.len(),
                weights.len()
            )));
        }
        Ok(KnapsackInstance {
            name: name.into(),
            weights,
            values,
            capacities,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_items(&self) -> usize {
        self.weights.len()
    }

    pub fn num_knapsacks(&self) -> usize {
        self.capacities.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    pub fn value(&self, knapsack: usize, item: usize) -> u64 {
        self.values[knapsack][item]
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn layout(&self) -> QubitLayout {
        QubitLayout::new(self)
    }
}

/// Number of slack bits for a knapsack of capacity `c`: `floor(log2 c) + 1`.
pub fn slack_bits(capacity: u64) -> usize {
    debug_assert!(capacity >= 1);
    (u64::BITS - capacity.leading_zeros()) as usize
}

/// Variable indexing: every decision variable `x[i][j]` first (row-major by
/// knapsack, then item), followed by the slack bits of knapsack 0, 1, ...
/// in ascending bit order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    num_items: usize,
    num_knapsacks: usize,
    slack_counts: Vec<usize>,
    slack_offsets: Vec<usize>,
    total_qubits: usize,
}

impl QubitLayout {
    pub fn new(instance: &KnapsackInstance) -> Self {
        let num_items = instance.num_items();
        let num_knapsacks = instance.num_knapsacks();
        let slack_counts: Vec<usize> = instance.capacities().iter().map(|&c| slack_bits(c)).collect();
        let mut slack_offsets = Vec::with_capacity(num_knapsacks);
        let mut next = num_items * num_knapsacks;
        for &count in &slack_counts {
            slack_offsets.push(next);
            next += count;
        }
        QubitLayout {
            num_items,
            num_knapsacks,
            slack_counts,
            slack_offsets,
            total_qubits: next,
        }
    }

    pub fn decision_count(&self) -> usize {
        self.num_items * self.num_knapsacks
    }

    pub fn slack_counts(&self) -> &[usize] {
        &self.slack_counts
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    pub fn num_items(&self) -> usize {
        self.num_items
    }

    pub fn num_knapsacks(&self) -> usize {
        self.num_knapsacks
    }

    #[inline]
    pub fn index_of_decision(&self, knapsack: usize, item: usize) -> usize {
        debug_assert!(knapsack < self.num_knapsacks && item < self.num_items);
        knapsack * self.num_items + item
    }

    #[inline]
    pub fn index_of_slack(&self, knapsack: usize, bit: usize) -> usize {
        debug_assert!(bit < self.slack_counts[knapsack]);
        self.slack_offsets[knapsack] + bit
    }
}

/// Inclusive integer range used by the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub const fn new(lo: u64, hi: u64) -> Self {
        IntRange { lo, hi }
    }

    fn check(&self, what: &str) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::param(format!(
                "{what} range is empty: lower bound {} > upper bound {}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(self.lo..=self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub num_items: usize,
    pub num_knapsacks: usize,
    pub weight_range: IntRange,
    pub value_range: IntRange,
    pub capacity_range: IntRange,
}

/// Draws a random instance. Weights first, then values knapsack by
/// knapsack, then capacities, all from one ChaCha stream keyed by `seed`.
pub fn generate_instance(params: &GeneratorParams, seed: u64) -> Result<KnapsackInstance> {
    if params.num_items == 0 || params.num_knapsacks == 0 {
        return Err(Error::param("need at least one item and one knapsack"));
    }
    params.weight_range.check("weight")?;
    params.value_range.check("value")?;
    params.capacity_range.check("capacity")?;
    if params.capacity_range.lo < 1 {
        return Err(Error::param("capacity lower bound must be >= 1"));
    }
    let mut rng = seed::rng(seed);
    let weights = (0..params.num_items)
        .map(|_| params.weight_range.sample(&mut rng))
        .collect();
    let values = (0..params.num_knapsacks)
        .map(|_| {
            (0..params.num_items)
                .map(|_| params.value_range.sample(&mut rng))
                .collect()
        })
        .collect();
    let capacities = (0..params.num_knapsacks)
        .map(|_| params.capacity_range.sample(&mut rng))
        .collect();
    KnapsackInstance::new(
        format!(
            "gen-n{}-m{}-s{seed}",
            params.num_items, params.num_knapsacks
        ),
        weights,
        values,
        capacities,
    )
}

pub fn to_json(instance: &KnapsackInstance) -> String {
    let mut s = serde_json::to_string_pretty(instance).expect("instance serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<KnapsackInstance> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        what: "instance".into(),
        message: e.to_string(),
    })
}

pub fn save_instance(instance: &KnapsackInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json(instance)).map_err(|e| Error::io(path, e))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<KnapsackInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            what: format!("instance file {}", path.display()),
            message,
        },
        other => other,
    })
}

/// Generator settings and seed for one of the four benchmark scenarios.
///
/// The scenarios share item and knapsack counts, qubit counts, optimal
/// values and penalty prefactors with the published benchmark table. The
/// item data itself is synthetic.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: usize,
    pub params: GeneratorParams,
    pub seed: u64,
}

pub fn scenario_specs() -> [Scenario; 4] {
    [
        Scenario {
            id: 1,
            params: GeneratorParams {
                num_items: 8,
                num_knapsacks: 1,
                weight_range: IntRange::new(1, 6),
                value_range: IntRange::new(1, 16),
                capacity_range: IntRange::new(8, 15),
            },
            seed: SCENARIO_SEEDS[0],
        },
        Scenario {
            id: 2,
            params: GeneratorParams {
                num_items: 4,
                num_knapsacks: 2,
                weight_range: IntRange::new(1, 5),
                value_range: IntRange::new(1, 5),
                capacity_range: IntRange::new(4, 7),
            },
            seed: SCENARIO_SEEDS[1],
        },
        Scenario {
            id: 3,
            params: GeneratorParams {
                num_items: 5,
                num_knapsacks: 2,
                weight_range: IntRange::new(1, 5),
                value_range: IntRange::new(1, 4),
                capacity_range: IntRange::new(4, 7),
            },
            seed: SCENARIO_SEEDS[2],
        },
        Scenario {
            id: 4,
            params: GeneratorParams {
                num_items: 6,
                num_knapsacks: 2,
                weight_range: IntRange::new(1, 6),
                value_range: IntRange::new(1, 4),
                capacity_range: IntRange::new(4, 15),
            },
            seed: SCENARIO_SEEDS[3],
        },
    ]
}

// First generator seeds whose instances have optimal value 22/12/13/13 and
// largest value 16/5/4/4; scenario 4 additionally has one capacity in 4..=7
// and one in 8..=15.
const SCENARIO_SEEDS: [u64; 4] = [1038, 11, 29, 5];

/// Builds scenario `id` (1..=4).
pub fn scenario(id: usize) -> Result<KnapsackInstance> {
    let spec = scenario_specs()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::param(format!("unknown scenario {id}; expected 1..=4")))?;
    let mut inst = generate_instance(&spec.params, spec.seed)?;
    inst.name = format!("scenario-{id}");
    Ok(inst)
}

pub fn scenarios() -> Vec<KnapsackInstance> {
    (1..=4).map(|id| scenario(id).expect("built-in scenario")).collect()
}
