use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{direct_product, quotient, Elem, Group, GroupHom, IndexSet, NormalAd, Subgroup};
use crate::simplicial::AugmentedSimplicialGroup;

/// An `n`-cube of groups: a node `𝔉_A` for every `A ⊆ {1..n}` and an arrow
/// `𝔉_A → 𝔉_{A∪{i}}` for every `i ∉ A`. Longer arrows are composites.
#[derive(Clone, Debug)]
pub struct GroupCube {
    dim: usize,
    nodes: Vec<Group>,
    /// `arrows[mask][i - 1]` for `i ∉ mask`.
    arrows: Vec<Vec<Option<GroupHom>>>,
}

impl GroupCube {
    /// Checks endpoints, that every arrow is a homomorphism, and that every
    /// square of single-step arrows commutes on generators.
    pub fn new(dim: usize, nodes: Vec<Group>, arrows: Vec<Vec<Option<GroupHom>>>) -> Result<Self> {
        let size = 1usize << dim;
        if nodes.len() != size || arrows.len() != size {
            return Err(Error::InvalidParameter(format!("a {dim}-cube has {size} nodes")));
        }
        for a in IndexSet::full(dim).subsets() {
            let row = &arrows[a.0 as usize];
            if row.len() != dim {
                return Err(Error::InvalidParameter(format!("node {:?} needs {dim} arrow slots", a.indices())));
            }
            for i in 1..=dim {
                match (&row[i - 1], a.contains(i)) {
                    (None, true) => {}
                    (Some(f), false) => {
                        let b = a.with(i);
                        if !f.source().same(&nodes[a.0 as usize]) || !f.target().same(&nodes[b.0 as usize]) {
                            return Err(Error::InvalidParameter(format!(
                                "arrow {:?} -> {:?} has the wrong endpoints",
                                a.indices(),
                                b.indices()
                            )));
                        }
                        f.verify()?;
                    }
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "node {:?}: arrow {i} present exactly when {i} is missing",
                            a.indices()
                        )))
                    }
                }
            }
        }
        let cube = GroupCube { dim, nodes, arrows };
        for a in IndexSet::full(dim).subsets() {
            for i in 1..=dim {
                for j in i + 1..=dim {
                    if a.contains(i) || a.contains(j) {
                        continue;
                    }
                    for x in cube.node(a).generators() {
                        let via_i = cube.arrow(a.with(i), j).apply(&cube.arrow(a, i).apply(&x));
                        let via_j = cube.arrow(a.with(j), i).apply(&cube.arrow(a, j).apply(&x));
                        if via_i != via_j {
                            return Err(Error::IdentityViolation {
                                identity: format!("square {:?} + {{{i}, {j}}} commutes", a.indices()),
                                witness: format!("{x:?}"),
                            });
                        }
                    }
                }
            }
        }
        Ok(cube)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node(&self, a: IndexSet) -> &Group {
        &self.nodes[a.0 as usize]
    }

    /// `𝔉_A → 𝔉_{A∪{i}}`.
    pub fn arrow(&self, a: IndexSet, i: usize) -> &GroupHom {
        self.arrows[a.0 as usize][i - 1].as_ref().expect("arrow leaves a node missing i")
    }

    /// The composite `𝔉_A → 𝔉_B` for `A ⊆ B`, adding indices in increasing
    /// order.
    pub fn map(&self, a: IndexSet, b: IndexSet, x: &Elem) -> Elem {
        debug_assert!(a.is_subset_of(b));
        let mut at = a;
        let mut y = x.clone();
        for i in b.indices() {
            if !at.contains(i) {
                y = self.arrow(at, i).apply(&y);
                at = at.with(i);
            }
        }
        y
    }
}

/// `𝔉_A = F / ∏_{i∈A} R_i` with the natural projections.
pub fn cube_from_ad(ad: &NormalAd) -> Result<GroupCube> {
    let dim = ad.len();
    let f = ad.ambient();
    let quotients = IndexSet::full(dim)
        .subsets()
        .into_iter()
        .map(|a| quotient(f, &ad.join(a)?))
        .collect::<Result<Vec<_>>>()?;
    let mut by_mask = vec![None; 1 << dim];
    for (a, q) in IndexSet::full(dim).subsets().into_iter().zip(quotients) {
        by_mask[a.0 as usize] = Some(q);
    }
    let by_mask: Vec<_> = by_mask.into_iter().map(|q| q.expect("every subset visited")).collect();
    let nodes: Vec<Group> = by_mask.iter().map(|q| q.group.clone()).collect();
    let arrows = (0..1usize << dim)
        .map(|mask| {
            let a = IndexSet(mask as u32);
            (1..=dim)
                .map(|i| {
                    (!a.contains(i)).then(|| {
                        let target = by_mask[a.with(i).0 as usize].clone();
                        let group = target.group.clone();
                        GroupHom::from_fn(&nodes[mask], &group, move |x| target.rep(x))
                    })
                })
                .collect()
        })
        .collect();
    GroupCube::new(dim, nodes, arrows)
}

/// The limit of the nodes strictly above `A`, as compatible tuples in the
/// product of `𝔉_B` over `B ⊋ A` (in mask order), with the canonical map
/// out of `𝔉_A`.
pub fn cube_limit(cube: &GroupCube, a: IndexSet) -> Result<(Group, GroupHom)> {
    let full = IndexSet::full(cube.dim());
    if a == full {
        return Err(Error::InvalidParameter("the whole index set has nothing above it".into()));
    }
    let above: Vec<IndexSet> = full.subsets().into_iter().filter(|&b| a.is_subset_of(b) && b != a).collect();
    let minimal: Vec<usize> = full.indices().into_iter().filter(|&i| !a.contains(i)).collect();
    let product = direct_product(&above.iter().map(|&b| cube.node(b).clone()).collect::<Vec<_>>());
    let slot: FxHashMap<u32, usize> = above.iter().enumerate().map(|(k, b)| (b.0, k)).collect();

    // Choose x_{A∪{i}} one i at a time; every node above is then forced,
    // and all the ways of reaching it must agree.
    let mut partial: Vec<Vec<Option<Elem>>> = vec![vec![None; above.len()]];
    for &i in &minimal {
        let start = a.with(i);
        let mut next = Vec::new();
        for tuple in &partial {
            'choice: for x in &cube.node(start).elements()?.list {
                let mut t = tuple.clone();
                for &b in &above {
                    if !start.is_subset_of(b) {
                        continue;
                    }
                    let y = cube.map(start, b, x);
                    let cell = &mut t[slot[&b.0]];
                    match cell {
                        Some(old) if *old != y => continue 'choice,
                        _ => *cell = Some(y),
                    }
                }
                next.push(t);
                if next.len() > product.cap() {
                    return Err(Error::CapExceeded { cap: product.cap() });
                }
            }
        }
        partial = next;
    }
    let members: Vec<Elem> = partial
        .into_iter()
        .map(|t| Elem::concat(&t.into_iter().map(|y| y.expect("every node above is reached")).collect::<Vec<_>>()))
        .collect();
    let limit = Subgroup::from_members(&product, members)?.as_group();
    let canonical = {
        let (cube, source) = (cube.clone(), cube.node(a).clone());
        GroupHom::from_fn(&source, &limit, move |x| {
            Elem::concat(&above.iter().map(|&b| cube.map(a, b, x)).collect::<Vec<_>>())
        })
    };
    Ok((limit, canonical))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessEntry {
    pub subset: Vec<usize>,
    pub node_order: usize,
    pub limit_order: usize,
    pub image_order: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub entries: Vec<ExactnessEntry>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.entries.iter().all(|e| e.surjective)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExactnessEntry> {
        self.entries.iter().filter(|e| !e.surjective)
    }

    pub fn entry(&self, subset: &[usize]) -> Option<&ExactnessEntry> {
        self.entries.iter().find(|e| e.subset == subset)
    }
}

/// Whether `𝔉_A → lim_{B⊋A} 𝔉_B` is onto for every proper `A`.
pub fn exactness_check(cube: &GroupCube) -> Result<ExactnessReport> {
    let full = IndexSet::full(cube.dim());
    let mut entries = Vec::new();
    for a in full.subsets() {
        if a == full {
            continue;
        }
        let (limit, canonical) = cube_limit(cube, a)?;
        let image_order = canonical.image()?.order();
        let limit_order = limit.order()?;
        entries.push(ExactnessEntry {
            subset: a.indices(),
            node_order: cube.node(a).order()?,
            limit_order,
            image_order,
            surjective: image_order == limit_order,
        });
    }
    Ok(ExactnessReport { entries })
}

/// The `n`-cube of an augmented simplicial group read at level `n - 1`:
/// `𝒢_A` is level `n - 1 - |A|` (the base for `A = {1..n}`), and adding
/// `i` to `A` applies the face whose index is the rank of `i` among the
/// indices missing from `A`; the last step is the augmentation.
pub fn augmented_cube(aug: &AugmentedSimplicialGroup, n: usize) -> Result<GroupCube> {
    if n == 0 || n > aug.complex.depth() + 1 {
        return Err(Error::InvalidParameter(format!("no {n}-cube at depth {}", aug.complex.depth())));
    }
    let full = IndexSet::full(n);
    let node = |a: IndexSet| -> Group {
        if a == full {
            aug.base().clone()
        } else {
            aug.complex.level(n - 1 - a.len()).clone()
        }
    };
    let nodes: Vec<Group> = (0..1u32 << n).map(|m| node(IndexSet(m))).collect();
    let arrows = (0..1u32 << n)
        .map(|mask| {
            let a = IndexSet(mask);
            (1..=n)
                .map(|i| {
                    (!a.contains(i)).then(|| {
                        let level = n - 1 - a.len();
                        let rank = (1..i).filter(|&x| !a.contains(x)).count();
                        aug.face_hom(level, rank)
                    })
                })
                .collect()
        })
        .collect();
    GroupCube::new(n, nodes, arrows)
}

/// One node of the comparison between the cube of an augmented simplicial
/// group and the cube of the ad of its face kernels.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NodeComparison {
    pub subset: Vec<usize>,
    /// `Ker(𝒢_∅ → 𝒢_A) = ∏_{i∈A} Ker(𝒢_∅ → 𝒢_{i})`.
    pub kernel_is_product: bool,
    pub onto: bool,
}

impl NodeComparison {
    pub fn passed(&self) -> bool {
        self.kernel_is_product && self.onto
    }
}

/// The face kernels at level `n - 1` as a normal ad, and the node-by-node
/// check that the augmented cube is the cube of that ad.
pub fn induced_ad_check(aug: &AugmentedSimplicialGroup, n: usize) -> Result<(NormalAd, Vec<NodeComparison>)> {
    let cube = augmented_cube(aug, n)?;
    let top = cube.node(IndexSet(0)).clone();
    let parts = (1..=n).map(|i| cube.arrow(IndexSet(0), i).kernel()).collect::<Result<Vec<_>>>()?;
    let ad = NormalAd::new(&top, parts)?;
    let mut out = Vec::new();
    for a in IndexSet::full(n).subsets() {
        let composite = {
            let (cube, target) = (cube.clone(), cube.node(a).clone());
            GroupHom::from_fn(&top, &target, move |x| cube.map(IndexSet(0), a, x))
        };
        out.push(NodeComparison {
            subset: a.indices(),
            kernel_is_product: composite.kernel()?.same_set(&ad.join(a)?),
            onto: composite.is_surjective()?,
        });
    }
    Ok((ad, out))
}
