//! Dual complexes of snc curve configurations on surfaces, and group
//! actions on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{rational_string, Rational};
use crate::matgroup::{models, order_cap, AbstractGroupId, FiniteGroup, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: u32,
    #[serde(rename = "coeff", with = "rational_string")]
    pub coefficient: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A transversal intersection point of two distinct components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub at: u32,
    pub pair: [u32; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfiguration {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    pub components: Vec<Component>,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
}

impl CurveConfiguration {
    pub fn component(&mut self, id: u32, coefficient: Rational, label: &str) -> &mut Self {
        self.components.push(Component { id, coefficient, label: (!label.is_empty()).then(|| label.to_string()) });
        self
    }

    pub fn crossing(&mut self, at: u32, a: u32, b: u32) -> &mut Self {
        self.crossings.push(Crossing { at, pair: [a, b] });
        self
    }

    /// A cycle of `n` coefficient-1 curves, curve `i` meeting curve `i+1`.
    pub fn cycle(n: u32) -> Self {
        let mut c = CurveConfiguration::default();
        for i in 0..n {
            c.component(i, Rational::one(), "");
        }
        for i in 0..n {
            c.crossing(i, i, (i + 1) % n);
        }
        c
    }

    fn index_of(&self, id: u32) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    fn crossing_index(&self, at: u32) -> Option<usize> {
        self.crossings.iter().position(|c| c.at == at)
    }

    fn is_full(&self, id: u32) -> bool {
        self.index_of(id).is_some_and(|i| self.components[i].coefficient.is_one())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfiguration(m));
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if c.coefficient < Rational::zero() || c.coefficient > Rational::one() {
                return bad(format!("component {} has coefficient outside [0,1]", c.id));
            }
            if !ids.insert(c.id) {
                return bad(format!("duplicate component id {}", c.id));
            }
        }
        let mut points = BTreeSet::new();
        for x in &self.crossings {
            let [a, b] = x.pair;
            if a == b {
                return bad(format!("crossing {} pairs component {a} with itself", x.at));
            }
            if !ids.contains(&a) || !ids.contains(&b) {
                return bad(format!("crossing {} refers to a missing component", x.at));
            }
            // a point shared by two crossings would be a triple point
            if !points.insert(x.at) {
                return bad(format!("point {} is listed twice", x.at));
            }
        }
        Ok(())
    }
}

/// The dual graph: coefficient-1 components and their crossings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualComplex {
    pub vertices: Vec<u32>,
    /// `(point, a, b)` for each crossing of two coefficient-1 components.
    pub edges: Vec<(u32, u32, u32)>,
    pub connected_components: usize,
    pub euler_characteristic: i64,
    /// `-1` when empty.
    pub dimension: i32,
}

pub fn build(config: &CurveConfiguration) -> Result<DualComplex> {
    config.validate()?;
    let vertices: Vec<u32> = config.components.iter().filter(|c| c.coefficient.is_one()).map(|c| c.id).collect();
    let edges: Vec<(u32, u32, u32)> = config
        .crossings
        .iter()
        .filter(|x| config.is_full(x.pair[0]) && config.is_full(x.pair[1]))
        .map(|x| (x.at, x.pair[0], x.pair[1]))
        .collect();
    let connected_components = count_components(&vertices, &edges);
    let dimension = if vertices.is_empty() {
        -1
    } else if edges.is_empty() {
        0
    } else {
        1
    };
    Ok(DualComplex {
        euler_characteristic: vertices.len() as i64 - edges.len() as i64,
        vertices,
        edges,
        connected_components,
        dimension,
    })
}

fn count_components(vertices: &[u32], edges: &[(u32, u32, u32)]) -> usize {
    let pos: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(_, a, b) in edges {
        let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
        parent[ra] = rb;
    }
    (0..vertices.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Shapes a dual complex of a log Calabi–Yau surface pair can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "topology")]
pub enum Topology {
    Empty,
    Point,
    TwoPoints,
    Segment { edges: usize },
    Circle { length: usize },
}

impl Topology {
    pub fn is_circle(&self) -> bool {
        matches!(self, Topology::Circle { .. })
    }
}

pub fn topology_type(dc: &DualComplex) -> Result<Topology> {
    let (v, e) = (dc.vertices.len(), dc.edges.len());
    if v == 0 {
        return Ok(Topology::Empty);
    }
    let mut degree: BTreeMap<u32, usize> = dc.vertices.iter().map(|&x| (x, 0)).collect();
    for &(_, a, b) in &dc.edges {
        *degree.get_mut(&a).expect("vertex") += 1;
        *degree.get_mut(&b).expect("vertex") += 1;
    }
    if let Some((x, d)) = degree.iter().find(|(_, &d)| d >= 3) {
        return Err(Error::NotLogCYShape(format!("vertex {x} has degree {d}")));
    }
    match dc.connected_components {
        1 if e == 0 => Ok(Topology::Point),
        1 if e + 1 == v => Ok(Topology::Segment { edges: e }),
        1 if e == v => Ok(Topology::Circle { length: v }),
        2 if e == 0 => Ok(Topology::TwoPoints),
        2 => Err(Error::NotLogCYShape("a disconnected complex must be two points".into())),
        k => Err(Error::NotLogCYShape(format!("{k} connected components"))),
    }
}

/// Topology of a configuration that could bound a log Calabi–Yau pair:
/// a circle forces every component with positive coefficient to have
/// coefficient 1.
pub fn log_cy_topology(config: &CurveConfiguration) -> Result<Topology> {
    let t = topology_type(&build(config)?)?;
    if t.is_circle() {
        if let Some(c) = config.components.iter().find(|c| !c.coefficient.is_zero() && !c.coefficient.is_one()) {
            return Err(Error::NotLogCYShape(format!(
                "component {} has coefficient below 1 while the complex is a circle",
                c.id
            )));
        }
    }
    Ok(t)
}

/// Blows up the crossing at `point`, inserting a coefficient-1 exceptional
/// curve between the two components.
pub fn corner_blowup(config: &CurveConfiguration, point: u32) -> Result<CurveConfiguration> {
    config.validate()?;
    let i = config
        .crossing_index(point)
        .ok_or_else(|| Error::InvalidConfiguration(format!("no crossing at point {point}")))?;
    let [a, b] = config.crossings[i].pair;
    if !config.is_full(a) || !config.is_full(b) {
        return Err(Error::NotACorner(point));
    }
    let new_id = config.components.iter().map(|c| c.id).max().map_or(0, |m| m + 1);
    let next_point = config.crossings.iter().map(|c| c.at).max().map_or(0, |m| m + 1);
    let mut out = config.clone();
    out.crossings.remove(i);
    out.component(new_id, Rational::one(), "exceptional");
    out.crossing(next_point, a, new_id);
    out.crossing(next_point + 1, new_id, b);
    Ok(out)
}

/// A symmetry of a configuration: images of component and crossing
/// positions (indices into the configuration's lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub components: Vec<u32>,
    pub crossings: Vec<u32>,
}

impl Symmetry {
    pub fn identity(config: &CurveConfiguration) -> Self {
        Symmetry {
            components: (0..config.components.len() as u32).collect(),
            crossings: (0..config.crossings.len() as u32).collect(),
        }
    }

    /// Builds a symmetry from a component permutation given by ids. The
    /// crossing permutation is taken from `crossings` (by point id) or, when
    /// absent, inferred from the incidences.
    pub fn from_ids(
        config: &CurveConfiguration,
        components: &BTreeMap<u32, u32>,
        crossings: Option<&BTreeMap<u32, u32>>,
    ) -> Result<Self> {
        let comp: Vec<u32> = config
            .components
            .iter()
            .map(|c| {
                let target = components.get(&c.id).copied().unwrap_or(c.id);
                config
                    .index_of(target)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::NotAnAction(format!("component {target} does not exist")))
            })
            .collect::<Result<_>>()?;
        let cross: Vec<u32> = match crossings {
            Some(map) => config
                .crossings
                .iter()
                .map(|x| {
                    let target = map.get(&x.at).copied().unwrap_or(x.at);
                    config
                        .crossing_index(target)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::NotAnAction(format!("point {target} does not exist")))
                })
                .collect::<Result<_>>()?,
            None => config
                .crossings
                .iter()
                .map(|x| {
                    let img = |id: u32| config.components[comp[config.index_of(id).expect("valid")] as usize].id;
                    let want = unordered(img(x.pair[0]), img(x.pair[1]));
                    let hits: Vec<usize> = (0..config.crossings.len())
                        .filter(|&j| unordered(config.crossings[j].pair[0], config.crossings[j].pair[1]) == want)
                        .collect();
                    match hits.as_slice() {
                        [j] => Ok(*j as u32),
                        [] => Err(Error::NotAnAction(format!("crossing {} has no image", x.at))),
                        _ => Err(Error::NotAnAction(format!(
                            "image of crossing {} is ambiguous; give the crossing permutation",
                            x.at
                        ))),
                    }
                })
                .collect::<Result<_>>()?,
        };
        Ok(Symmetry { components: comp, crossings: cross })
    }

    /// Checks bijectivity, coefficients and incidences.
    pub fn check(&self, config: &CurveConfiguration) -> Result<()> {
        let bij = |p: &[u32], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| (x as usize) < n && !std::mem::replace(&mut seen[x as usize], true))
        };
        if !bij(&self.components, config.components.len()) || !bij(&self.crossings, config.crossings.len()) {
            return Err(Error::NotAnAction("not a permutation".into()));
        }
        for (i, &j) in self.components.iter().enumerate() {
            if config.components[i].coefficient != config.components[j as usize].coefficient {
                return Err(Error::NotAnAction(format!(
                    "component {} is sent to a component with another coefficient",
                    config.components[i].id
                )));
            }
        }
        for (i, &j) in self.crossings.iter().enumerate() {
            let x = &config.crossings[i];
            let y = &config.crossings[j as usize];
            let img = |id: u32| config.components[self.components[config.index_of(id).expect("valid")] as usize].id;
            if unordered(img(x.pair[0]), img(x.pair[1])) != unordered(y.pair[0], y.pair[1]) {
                return Err(Error::NotAnAction(format!("crossing {} is not sent to a crossing of the image curves", x.at)));
            }
        }
        Ok(())
    }

    fn concat(&self) -> Vec<u32> {
        let n = self.components.len() as u32;
        self.components.iter().copied().chain(self.crossings.iter().map(|&x| x + n)).collect()
    }
}

fn unordered(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// A finite group acting on a configuration, with the kernel `N` of the
/// action on the dual complex and the image `G_D`.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    group: FiniteGroup,
    kernel: Subset,
    image: FiniteGroup,
    dimension: i32,
    topology: Option<Topology>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSummary {
    pub group_order: usize,
    pub kernel_order: usize,
    pub kernel_abelian: bool,
    /// Abelian invariants of `N`; empty when `N` is not abelian.
    pub kernel_invariants: Vec<usize>,
    pub complex_group: AbstractGroupId,
    pub complex_group_order: usize,
    pub exact: bool,
}

impl ComplexAction {
    /// `group` acts through the given generator symmetries, which must
    /// define a homomorphism.
    pub fn new(config: &CurveConfiguration, group: &FiniteGroup, generators: &[Symmetry]) -> Result<Self> {
        let dc = build(config)?;
        for s in generators {
            s.check(config)?;
        }
        if generators.len() != group.generators().len() {
            return Err(Error::NotAnAction("one symmetry per generator is required".into()));
        }
        let perms: Vec<Vec<u32>> = generators.iter().map(Symmetry::concat).collect();
        let images = if perms.is_empty() { vec![Vec::new(); group.order()] } else { group.extend_to_permutations(&perms)? };
        // positions belonging to the dual complex
        let nc = config.components.len();
        let on_complex: Vec<usize> = (0..nc)
            .filter(|&i| config.components[i].coefficient.is_one())
            .chain((0..config.crossings.len()).filter(|&j| dc.edges.iter().any(|e| e.0 == config.crossings[j].at)).map(|j| j + nc))
            .collect();
        let kernel: Subset =
            (0..group.order()).filter(|&g| on_complex.iter().all(|&p| images[g].get(p).is_none_or(|&x| x as usize == p))).collect();
        let restrict = |p: &[u32]| -> Vec<u32> {
            let pos: HashMap<usize, u32> = on_complex.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
            on_complex.iter().map(|&x| pos[&(p[x] as usize)]).collect()
        };
        let image = if on_complex.is_empty() || perms.is_empty() {
            models::cyclic(1)
        } else {
            FiniteGroup::from_permutations(&perms.iter().map(|p| restrict(p)).collect::<Vec<_>>(), order_cap())?.0
        };
        let action = ComplexAction { group: group.clone(), kernel, image, dimension: dc.dimension, topology: topology_type(&dc).ok() };
        if action.group.order() != action.kernel.len() * action.image.order() {
            return Err(Error::NotAnAction("|G| differs from |N|·|G_D|".into()));
        }
        Ok(action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subset {
        &self.kernel
    }

    pub fn image(&self) -> &FiniteGroup {
        &self.image
    }

    pub fn dimension(&self) -> i32 {
        self.dimension
    }

    pub fn topology(&self) -> Option<Topology> {
        self.topology
    }

    pub fn is_exact(&self) -> bool {
        self.group.order() == self.kernel.len() * self.image.order()
    }

    pub fn kernel_is_abelian(&self) -> bool {
        self.group.subgroup_is_abelian(&self.kernel)
    }

    pub fn summary(&self) -> ActionSummary {
        let abelian = self.kernel_is_abelian();
        ActionSummary {
            group_order: self.group.order(),
            kernel_order: self.kernel.len(),
            kernel_abelian: abelian,
            kernel_invariants: if abelian { self.group.abelian_invariants(&self.kernel) } else { Vec::new() },
            complex_group: self.image.recognize(),
            complex_group_order: self.image.order(),
            exact: self.is_exact(),
        }
    }
}

/// A generator given by component ids (and optionally point ids); unlisted
/// ids are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub components: BTreeMap<u32, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossings: Option<BTreeMap<u32, u32>>,
}

/// The acting group: generated by the listed symmetries, times an abelian
/// group with the given invariants acting trivially on every component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trivial_factor: Vec<usize>,
}

pub fn act(config: &CurveConfiguration, spec: &ActionSpec) -> Result<ComplexAction> {
    config.validate()?;
    let syms: Vec<Symmetry> = spec
        .generators
        .iter()
        .map(|g| Symmetry::from_ids(config, &g.components, g.crossings.as_ref()))
        .collect::<Result<_>>()?;
    for s in &syms {
        s.check(config)?;
    }
    if spec.trivial_factor.contains(&0) {
        return Err(Error::Input("trivial factor orders must be positive".into()));
    }
    // the trivial factor is modelled on extra points after the configuration
    let base = config.components.len() + config.crossings.len();
    let extra: usize = spec.trivial_factor.iter().sum();
    let total = base + extra;
    let mut gens: Vec<Vec<u32>> = syms
        .iter()
        .map(|s| {
            let mut p = s.concat();
            p.extend((base..total).map(|x| x as u32));
            p
        })
        .collect();
    let mut gen_syms = syms.clone();
    let mut offset = base;
    for &m in &spec.trivial_factor {
        let mut p: Vec<u32> = (0..total as u32).collect();
        for i in 0..m {
            p[offset + i] = (offset + (i + 1) % m) as u32;
        }
        offset += m;
        gens.push(p);
        gen_syms.push(Symmetry::identity(config));
    }
    if gens.is_empty() {
        gens.push((0..total as u32).collect());
        gen_syms.push(Symmetry::identity(config));
    }
    let (group, _) = FiniteGroup::from_permutations(&gens, order_cap())?;
    ComplexAction::new(config, &group, &gen_syms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "reason")]
pub enum Obstruction {
    Pass,
    Fail(String),
}

impl Obstruction {
    pub fn passes(&self) -> bool {
        matches!(self, Obstruction::Pass)
    }
}

/// Necessary condition for coregularity 0 realized on this pair: `N`
/// abelian of rank at most 2 and `G_D` trivial, cyclic or dihedral.
pub fn coreg0_obstruction(action: &ComplexAction) -> Result<Obstruction> {
    if action.dimension() != 1 {
        return Err(Error::WrongDimension(action.dimension()));
    }
    if !action.kernel_is_abelian() {
        return Ok(Obstruction::Fail("N is not abelian".into()));
    }
    let rank = action.group.abelian_rank(&action.kernel);
    if rank > 2 {
        return Ok(Obstruction::Fail(format!("N has rank {rank}")));
    }
    let id = action.image.recognize();
    if !matches!(id, AbstractGroupId::Trivial) && !id.is_cyclic_or_dihedral() {
        return Ok(Obstruction::Fail(format!("G_D is {id}")));
    }
    Ok(Obstruction::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use proptest::prelude::*;

    fn one() -> Rational {
        Rational::one()
    }

    #[test]
    fn triangle_and_single_curve() {
        let t = CurveConfiguration::cycle(3);
        assert_eq!(topology_type(&build(&t).unwrap()).unwrap(), Topology::Circle { length: 3 });
        let mut c = CurveConfiguration::default();
        c.component(0, one(), "");
        let dc = build(&c).unwrap();
        assert_eq!((dc.dimension, topology_type(&dc).unwrap()), (0, Topology::Point));
    }

    #[test]
    fn fractional_component_is_invisible() {
        let mut c = CurveConfiguration::default();
        c.component(0, one(), "").component(1, one(), "").component(2, rat(1, 2), "");
        c.crossing(0, 0, 2).crossing(1, 1, 2);
        assert_eq!(topology_type(&build(&c).unwrap()).unwrap(), Topology::TwoPoints);
        assert_eq!(log_cy_topology(&c).unwrap(), Topology::TwoPoints);
    }

    #[test]
    fn circle_with_fractional_component_is_rejected() {
        let mut c = CurveConfiguration::cycle(3);
        c.component(7, rat(1, 3), "");
        c.crossing(9, 0, 7);
        assert!(matches!(log_cy_topology(&c), Err(Error::NotLogCYShape(_))));
        // a zero coefficient is not part of the boundary
        let mut z = CurveConfiguration::cycle(3);
        z.component(7, Rational::zero(), "");
        assert!(log_cy_topology(&z).is_ok());
    }

    #[test]
    fn bad_shapes() {
        let mut star = CurveConfiguration::default();
        for i in 0..4 {
            star.component(i, one(), "");
        }
        star.crossing(0, 0, 1).crossing(1, 0, 2).crossing(2, 0, 3);
        assert!(matches!(topology_type(&build(&star).unwrap()), Err(Error::NotLogCYShape(_))));
        let mut three = CurveConfiguration::default();
        for i in 0..3 {
            three.component(i, one(), "");
        }
        assert!(matches!(topology_type(&build(&three).unwrap()), Err(Error::NotLogCYShape(_))));
        let mut selfx = CurveConfiguration::default();
        selfx.component(0, one(), "").crossing(0, 0, 0);
        assert!(matches!(build(&selfx), Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn blowups() {
        let t = CurveConfiguration::cycle(3);
        let b = corner_blowup(&t, 0).unwrap();
        assert_eq!(log_cy_topology(&b).unwrap(), Topology::Circle { length: 4 });
        let mut seg = CurveConfiguration::default();
        seg.component(0, one(), "").component(1, one(), "").crossing(5, 0, 1);
        let s = corner_blowup(&seg, 5).unwrap();
        assert_eq!(log_cy_topology(&s).unwrap(), Topology::Segment { edges: 2 });
        let mut frac = seg.clone();
        frac.components[1].coefficient = rat(1, 2);
        assert_eq!(corner_blowup(&frac, 5), Err(Error::NotACorner(5)));
    }

    #[test]
    fn repeated_blowups_lengthen_the_cycle() {
        let mut c = CurveConfiguration::cycle(3);
        for n in 1..=6 {
            let at = c.crossings[0].at;
            c = corner_blowup(&c, at).unwrap();
            assert_eq!(log_cy_topology(&c).unwrap(), Topology::Circle { length: 3 + n });
        }
    }

    fn map(pairs: &[(u32, u32)]) -> BTreeMap<u32, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn symmetric_group_on_triangle() {
        let t = CurveConfiguration::cycle(3);
        let spec = ActionSpec {
            generators: vec![
                GeneratorSpec { components: map(&[(0, 1), (1, 2), (2, 0)]), crossings: None },
                GeneratorSpec { components: map(&[(0, 1), (1, 0)]), crossings: None },
            ],
            trivial_factor: vec![],
        };
        let a = act(&t, &spec).unwrap();
        let s = a.summary();
        assert_eq!((s.group_order, s.kernel_order, s.complex_group), (6, 1, AbstractGroupId::Dihedral(6)));
        assert_eq!(coreg0_obstruction(&a).unwrap(), Obstruction::Pass);
    }

    #[test]
    fn trivial_and_swap_actions() {
        let t = CurveConfiguration::cycle(3);
        let a = act(&t, &ActionSpec::default()).unwrap();
        assert_eq!((a.group().order(), a.kernel().len(), a.image().order()), (1, 1, 1));
        let mut two = CurveConfiguration::default();
        two.component(0, one(), "").component(1, one(), "");
        let spec = ActionSpec {
            generators: vec![GeneratorSpec { components: map(&[(0, 1), (1, 0)]), crossings: None }],
            trivial_factor: vec![],
        };
        let s = act(&two, &spec).unwrap().summary();
        assert_eq!((s.kernel_order, s.complex_group), (1, AbstractGroupId::Cyclic(2)));
    }

    #[test]
    fn kernel_rank_three_fails() {
        let t = CurveConfiguration::cycle(3);
        let spec = ActionSpec { generators: vec![], trivial_factor: vec![2, 2, 2] };
        let a = act(&t, &spec).unwrap();
        assert_eq!(a.kernel().len(), 8);
        assert!(matches!(coreg0_obstruction(&a).unwrap(), Obstruction::Fail(_)));
    }

    #[test]
    fn incidence_violations_are_rejected() {
        let mut path = CurveConfiguration::default();
        path.component(0, one(), "").component(1, one(), "").component(2, one(), "");
        path.crossing(0, 0, 1).crossing(1, 1, 2);
        let spec = ActionSpec {
            generators: vec![GeneratorSpec { components: map(&[(0, 1), (1, 0)]), crossings: None }],
            trivial_factor: vec![],
        };
        assert!(matches!(act(&path, &spec), Err(Error::NotAnAction(_))));
    }

    #[test]
    fn zero_dimensional_complex_is_out_of_scope() {
        let mut c = CurveConfiguration::default();
        c.component(0, one(), "");
        let a = act(&c, &ActionSpec::default()).unwrap();
        assert_eq!(coreg0_obstruction(&a), Err(Error::WrongDimension(0)));
    }

    #[test]
    fn json_format() {
        let json = r#"{"components":[{"id":0,"coeff":"1/1"},{"id":1,"coeff":"1/2"}],"crossings":[{"at":3,"pair":[0,1]}]}"#;
        let c: CurveConfiguration = serde_json::from_str(json).unwrap();
        assert_eq!(c.components[1].coefficient, rat(1, 2));
        assert_eq!(serde_json::to_string(&c).unwrap(), json);
        let t = serde_json::to_string(&Topology::Circle { length: 3 }).unwrap();
        assert_eq!(t, r#"{"topology":"Circle","length":3}"#);
    }

    proptest! {
        #[test]
        fn rotations_of_cycles_are_exact(n in 2u32..8, k in 0u32..8) {
            let c = CurveConfiguration::cycle(n);
            let rot: BTreeMap<u32, u32> = (0..n).map(|i| (i, (i + k) % n)).collect();
            let crossings: BTreeMap<u32, u32> = (0..n).map(|i| (i, (i + k) % n)).collect();
            let spec = ActionSpec { generators: vec![GeneratorSpec { components: rot, crossings: Some(crossings) }], trivial_factor: vec![] };
            let a = act(&c, &spec).unwrap();
            prop_assert!(a.is_exact());
            prop_assert!(coreg0_obstruction(&a).unwrap().passes());
        }
    }
}
