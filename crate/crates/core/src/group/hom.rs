use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{closure, Elem, Group, Subgroup};
use crate::error::{Error, Result};

type MapFn = dyn Fn(&Elem) -> Elem + Send + Sync;

#[derive(Clone)]
enum HomMap {
    Table(Arc<FxHashMap<Elem, Elem>>),
    Func(Arc<MapFn>),
}

/// A homomorphism between two groups, either tabulated from generator
/// images or given structurally by a function.
#[derive(Clone)]
pub struct GroupHom {
    source: Group,
    target: Group,
    map: HomMap,
}

impl GroupHom {
    /// The unique homomorphism sending the i-th source generator to
    /// `images[i]`, verified by walking the whole Cayley graph.
    pub fn from_images(source: &Group, target: &Group, images: &[Elem]) -> Result<Self> {
        let gens = source.generators();
        if gens.len() != images.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images supplied for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let els = source.elements()?;
        let mut table: FxHashMap<Elem, Elem> = FxHashMap::default();
        table.reserve(els.len());
        table.insert(source.identity(), target.identity());
        let mut queue = vec![source.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i].clone();
            i += 1;
            let fx = table[&x].clone();
            for (g, img) in gens.iter().zip(images) {
                let y = source.mul(&x, g);
                let fy = target.mul(&fx, img);
                match table.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::NotAHomomorphism(format!(
                            "image of {y:?} is both {prev:?} and {fy:?}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map: HomMap::Table(Arc::new(table)) })
    }

    /// A structural map known to be a homomorphism by construction
    /// (projections, inclusions, faces). Use [`GroupHom::verify`] to check.
    pub fn from_fn(source: &Group, target: &Group, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map: HomMap::Func(Arc::new(f)) }
    }

    pub fn identity(g: &Group) -> Self {
        Self::from_fn(g, g, |x| x.clone())
    }

    /// Inclusion of a subgroup (viewed as a group) into its ambient group.
    pub fn inclusion(sub: &Subgroup) -> Self {
        Self::from_fn(&sub.as_group(), sub.ambient(), |x| x.clone())
    }

    /// The map sending everything to the identity.
    pub fn trivial(source: &Group, target: &Group) -> Self {
        let e = target.identity();
        Self::from_fn(source, target, move |_| e.clone())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match &self.map {
            HomMap::Table(t) => t
                .get(x)
                .cloned()
                .unwrap_or_else(|| panic!("{x:?} is not an element of {:?}", self.source)),
            HomMap::Func(f) => f(x),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        let a = self.clone();
        let b = other.clone();
        GroupHom::from_fn(&self.source, &other.target, move |x| b.apply(&a.apply(x)))
    }

    /// Restriction to a group whose elements lie in the source (same encoding).
    pub fn restrict(&self, new_source: &Group) -> GroupHom {
        let a = self.clone();
        GroupHom::from_fn(new_source, &self.target, move |x| a.apply(x))
    }

    /// Same map with the target replaced by a group containing the image.
    pub fn corestrict(&self, new_target: &Group) -> GroupHom {
        let a = self.clone();
        GroupHom::from_fn(&self.source, new_target, move |x| a.apply(x))
    }

    /// Checks `f(x g) = f(x) f(g)` over every source element and generator,
    /// which forces `f` to be a homomorphism.
    pub fn verify(&self) -> Result<()> {
        let els = self.source.elements()?;
        if !self.target.is_identity(&self.apply(&self.source.identity())) {
            return Err(Error::NotAHomomorphism("identity not preserved".into()));
        }
        let gens = self.source.generators();
        let gimg: Vec<Elem> = gens.iter().map(|g| self.apply(g)).collect();
        for x in &els.list {
            let fx = self.apply(x);
            for (g, fg) in gens.iter().zip(&gimg) {
                if self.apply(&self.source.mul(x, g)) != self.target.mul(&fx, fg) {
                    return Err(Error::NotAHomomorphism(format!("fails at ({x:?}, {g:?})")));
                }
            }
        }
        Ok(())
    }

    /// Seeded spot check for sources too large to enumerate.
    pub fn verify_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = self.source.random_element(&mut rng);
            let y = self.source.random_element(&mut rng);
            if self.apply(&self.source.mul(&x, &y)) != self.target.mul(&self.apply(&x), &self.apply(&y)) {
                return Err(Error::NotAHomomorphism(format!("fails at ({x:?}, {y:?})")));
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let els = self.source.elements()?;
        let members: Vec<Elem> =
            els.list.iter().filter(|x| self.target.is_identity(&self.apply(x))).cloned().collect();
        Subgroup::from_members(&self.source, members)
    }

    pub fn image(&self) -> Result<Subgroup> {
        let imgs: Vec<Elem> = self.source.generators().iter().map(|g| self.apply(g)).collect();
        closure(&self.target, &imgs)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Result<Subgroup> {
        let imgs: Vec<Elem> = sub.gens().iter().map(|g| self.apply(g)).collect();
        closure(&self.target, &imgs)
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Result<Subgroup> {
        let els = self.source.elements()?;
        let members: Vec<Elem> = els.list.iter().filter(|x| sub.contains(&self.apply(x))).cloned().collect();
        Subgroup::from_members(&self.source, members)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()?.order() == self.target.order()?)
    }

    pub fn is_bijective(&self) -> Result<bool> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// Pointwise equality on all source elements.
    pub fn agrees_with(&self, other: &GroupHom) -> Result<bool> {
        let els = self.source.elements()?;
        Ok(els.list.iter().all(|x| self.apply(x) == other.apply(x)))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?} -> {:?})", self.source, self.target)
    }
}
