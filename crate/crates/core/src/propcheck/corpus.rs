use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{is_annihilator_multiplication, Verdict};
use crate::dsl::ast::{ModuleExpr, RingExpr};
use crate::dsl::parse_ring;
use crate::error::{Error, Result};
use crate::finmod::{construct_module, enumerate_submodules, FiniteModule, Submodule};
use crate::finring::{construct_ring, enumerate_ideals, FiniteRing, Ideal, DEFAULT_IDEAL_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceBudget {
    pub max_ring_order: usize,
    pub max_module_order: usize,
    /// Random instances drawn on top of the golden ones.
    pub max_instances: usize,
    pub random_seed: u64,
}

impl Default for InstanceBudget {
    fn default() -> Self {
        InstanceBudget {
            max_ring_order: 12,
            max_module_order: 16,
            max_instances: 200,
            random_seed: 1,
        }
    }
}

impl InstanceBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_ring_order < 2 || self.max_module_order < 2 {
            return Err(Error::Degenerate(format!(
                "budget needs ring and module orders of at least 2, got {} and {}",
                self.max_ring_order, self.max_module_order
            )));
        }
        Ok(())
    }
}

/// A corpus member. Expensive facts are computed once, on first use.
#[derive(Debug)]
pub struct Instance {
    pub label: Option<&'static str>,
    pub descriptor: ModuleExpr,
    pub module: Arc<FiniteModule>,
    am: OnceLock<Verdict>,
    subs: OnceLock<Option<Vec<Submodule>>>,
}

impl Instance {
    pub fn new(label: Option<&'static str>, module: Arc<FiniteModule>) -> Self {
        Instance {
            label,
            descriptor: module.descriptor().clone(),
            module,
            am: OnceLock::new(),
            subs: OnceLock::new(),
        }
    }

    pub fn from_descriptor(descriptor: &ModuleExpr) -> Result<Self> {
        Ok(Self::new(None, construct_module(descriptor)?))
    }

    pub fn ann_mult(&self) -> &Verdict {
        self.am.get_or_init(|| is_annihilator_multiplication(&self.module))
    }

    /// The submodule lattice, or `None` past the enumeration caps.
    pub fn submodules(&self) -> Option<&[Submodule]> {
        self.subs
            .get_or_init(|| enumerate_submodules(&self.module).ok())
            .as_deref()
    }

    /// `|A|·|E|`, the size used to rank counterexamples.
    pub fn carrier(&self) -> usize {
        self.module.ring().order() * self.module.order()
    }
}

#[derive(Debug)]
pub struct Corpus {
    pub budget: InstanceBudget,
    pub instances: Vec<Instance>,
    /// Distinct rings, in order of first appearance.
    pub rings: Vec<Arc<FiniteRing>>,
    /// Random draws rejected because their descriptor was already present.
    pub duplicate_draws: usize,
}

const LOCAL: &str = "(polyquot (Z 2) [x y] {x^2 xy y^2})";

/// Named instances every corpus contains, whatever the budget.
pub fn golden_descriptors() -> Vec<(&'static str, String)> {
    vec![
        (
            "z2_z4_over_z8",
            "(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))".into(),
        ),
        (
            "local_a_plus_a_mod_x",
            format!("(dsum (self {LOCAL}) (cyclic {LOCAL} (ideal x)))"),
        ),
        ("x3_mod_x2", "(cyclic (polyquot (Z 2) [x] {x^3}) (ideal x^2))".into()),
        ("z12", "(self (Z 12))".into()),
        ("z6", "(self (Z 6))".into()),
        ("z4", "(self (Z 4))".into()),
        ("z8", "(self (Z 8))".into()),
        ("z4_z2_over_z4", "(dsum (self (Z 4)) (cyclic (Z 4) (ideal 2)))".into()),
        ("z2_over_z4", "(cyclic (Z 4) (ideal 2))".into()),
        ("f2_squared", "(free (Z 2) 2)".into()),
        ("f2_cubed", "(free (Z 2) 3)".into()),
        ("f3_squared", "(free (Z 3) 2)".into()),
        ("f5", "(self (Z 5))".into()),
        ("z12_squared", "(free (Z 12) 2)".into()),
        ("f2_times_f3", "(prod (self (Z 2)) (self (Z 3)))".into()),
        ("local_self", format!("(self {LOCAL})")),
        ("local_free_2", format!("(free {LOCAL} 2)")),
    ]
}

fn ring_pool(max_order: usize) -> Vec<(RingExpr, Arc<FiniteRing>, Vec<Ideal>)> {
    let mut texts: Vec<String> = (2..=12).map(|n| format!("(Z {n})")).collect();
    texts.extend(
        [
            "(prod (Z 2) (Z 2))",
            "(prod (Z 2) (Z 3))",
            "(prod (Z 2) (Z 4))",
            "(prod (Z 2) (Z 5))",
            "(prod (Z 3) (Z 3))",
            "(prod (Z 2) (Z 6))",
            "(prod (Z 3) (Z 4))",
            "(prod (Z 2) (Z 2) (Z 2))",
            "(prod (Z 2) (Z 2) (Z 3))",
            "(polyquot (Z 2) [x] {x^2})",
            "(polyquot (Z 2) [x] {x^2+x+1})",
            "(polyquot (Z 2) [x] {x^3})",
            "(polyquot (Z 2) [x] {x^3+x+1})",
            LOCAL,
            "(polyquot (Z 3) [x] {x^2})",
            "(polyquot (Z 3) [x] {x^2+1})",
        ]
        .map(String::from),
    );
    texts
        .iter()
        .filter_map(|t| {
            let expr = parse_ring(t).expect("pool ring parses");
            let ring = construct_ring(&expr).expect("pool ring builds");
            if ring.order() > max_order {
                return None;
            }
            let proper = enumerate_ideals(&ring, DEFAULT_IDEAL_CAP)
                .expect("pool ring is small")
                .into_iter()
                .filter(|i| i.is_proper())
                .collect();
            Some((expr, ring, proper))
        })
        .collect()
}

fn cyclic_expr(ring: &RingExpr, ideal: &Ideal) -> ModuleExpr {
    if ideal.is_zero() {
        ModuleExpr::SelfMod(ring.clone())
    } else {
        ModuleExpr::Cyclic {
            ring: ring.clone(),
            ideal: ideal.generator_names(),
        }
    }
}

struct Drawer<'a> {
    rng: ChaCha8Rng,
    pool: &'a [(RingExpr, Arc<FiniteRing>, Vec<Ideal>)],
    max_module: usize,
}

impl Drawer<'_> {
    fn pick(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// A sum of `parts` cyclic modules over pool ring `r`, within `limit` elements.
    fn cyclic_sum(&mut self, r: usize, parts: usize, limit: usize) -> Option<(ModuleExpr, usize)> {
        let (expr, ring, ideals) = &self.pool[r];
        let mut exprs = Vec::new();
        let mut order = 1;
        for _ in 0..parts {
            let ideal = &ideals[self.pick(ideals.len())];
            order *= ring.order() / ideal.len();
            exprs.push(cyclic_expr(expr, ideal));
        }
        if order > limit {
            return None;
        }
        Some(if exprs.len() == 1 {
            (exprs.pop().unwrap(), order)
        } else {
            (ModuleExpr::DSum(exprs), order)
        })
    }

    fn draw(&mut self, max_ring: usize) -> Option<ModuleExpr> {
        let roll = self.pick(100);
        let r = self.pick(self.pool.len());
        match roll {
            0..=24 => self.cyclic_sum(r, 1, self.max_module).map(|m| m.0),
            25..=49 => self.cyclic_sum(r, 2, self.max_module).map(|m| m.0),
            50..=59 => self.cyclic_sum(r, 3, self.max_module).map(|m| m.0),
            60..=79 => {
                let parts = 1 + self.pick(2);
                let (base, _) = self.cyclic_sum(r, parts, self.max_module * 2)?;
                let e = construct_module(&base).ok()?;
                let g = 1 + self.pick(e.order() - 1);
                let span = e.cyclic_set(g).count_ones(..);
                let quotient_order = e.order() / span;
                if quotient_order < 2 || quotient_order > self.max_module {
                    return None;
                }
                Some(ModuleExpr::Quot {
                    module: Box::new(base),
                    sub: vec![e.name(g).to_string()],
                })
            }
            80..=94 => {
                let pairs: Vec<(usize, usize)> = (0..self.pool.len())
                    .flat_map(|a| (0..self.pool.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| self.pool[a].1.order() * self.pool[b].1.order() <= max_ring)
                    .collect();
                if pairs.is_empty() {
                    return None;
                }
                let (r, s) = pairs[self.pick(pairs.len())];
                let parts = 1 + self.pick(2);
                let (left, lo) = self.cyclic_sum(r, parts, self.max_module)?;
                let (right, ro) = self.cyclic_sum(s, 1, self.max_module)?;
                (lo * ro <= self.max_module).then(|| ModuleExpr::Prod(vec![left, right]))
            }
            _ => {
                let (expr, ring, _) = &self.pool[r];
                let rank = 2 + self.pick(2);
                (ring.order().checked_pow(rank as u32)? <= self.max_module).then(|| ModuleExpr::Free {
                    ring: expr.clone(),
                    rank,
                })
            }
        }
    }
}

/// The golden instances followed by `max_instances` seeded random ones: cyclic
/// modules, direct sums of up to three cyclics, quotients of those by a cyclic
/// submodule, products over product rings, and small free modules. Descriptors
/// are unique; isomorphic instances with different descriptors are kept.
pub fn generate_instances(budget: &InstanceBudget) -> Result<Corpus> {
    budget.validate()?;
    let mut seen: HashSet<String> = HashSet::new();
    let mut instances = Vec::new();
    for (label, text) in golden_descriptors() {
        let expr = crate::dsl::parse_module(&text).expect("golden descriptor parses");
        let module = construct_module(&expr)?;
        seen.insert(module.descriptor().to_string());
        instances.push(Instance::new(Some(label), module));
    }
    let pool = ring_pool(budget.max_ring_order);
    let mut drawer = Drawer {
        rng: ChaCha8Rng::seed_from_u64(budget.random_seed),
        pool: &pool,
        max_module: budget.max_module_order,
    };
    let mut added = 0;
    let mut duplicate_draws = 0;
    let mut attempts = 0;
    while added < budget.max_instances && attempts < budget.max_instances * 200 {
        attempts += 1;
        let Some(expr) = drawer.draw(budget.max_ring_order) else {
            continue;
        };
        if !seen.insert(expr.to_string()) {
            duplicate_draws += 1;
            continue;
        }
        let module = match construct_module(&expr) {
            Ok(m) if !m.is_zero() => m,
            Ok(_) => continue,
            Err(e) if e.is_cap() => continue,
            Err(e) => return Err(e),
        };
        instances.push(Instance::new(None, module));
        added += 1;
    }
    let mut rings: Vec<Arc<FiniteRing>> = Vec::new();
    for inst in &instances {
        let r = inst.module.ring();
        if !rings.iter().any(|s| s.same_as(r)) {
            rings.push(r.clone());
        }
    }
    Ok(Corpus {
        budget: *budget,
        instances,
        rings,
        duplicate_draws,
    })
}

/// `R ⊕ R/I` over `R`; faithful because of the first summand.
pub fn tvon_witness_module(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Arc<FiniteModule>> {
    FiniteModule::direct_sum(&[FiniteModule::self_module(ring), FiniteModule::cyclic(ring, ideal)?])
}
