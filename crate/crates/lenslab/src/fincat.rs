//! Explicit finite categories and functors.
//!
//! A [`FinCat`] is a category given by finite data: objects, morphisms with
//! named endpoints, an identity for each object, and a composition table
//! defined on exactly the composable pairs. Construction through
//! [`FinCat::new`] checks every law exhaustively (identity endpoints, left
//! and right unit laws, totality of composition, associativity over all
//! composable triples), so a value of this type is a category, not a
//! candidate.
//!
//! Object and morphism identifiers are strings, unique within one category.
//! The pair constructions here produce canonical composite names `(a,c)` and
//! `(u,v)`, and the coproduct tags summands with `inl(..)`/`inr(..)`, so
//! that every construction is deterministic and serialization round-trips.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Identifier of an object, unique within one category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(String);

/// Identifier of a morphism, unique within one category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(String);

macro_rules! id_impls {
    ($t:ident) => {
        impl $t {
            pub fn new(s: impl Into<String>) -> Self {
                $t(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t(s.to_owned())
            }
        }

        impl From<String> for $t {
            fn from(s: String) -> Self {
                $t(s)
            }
        }

        impl From<&String> for $t {
            fn from(s: &String) -> Self {
                $t(s.clone())
            }
        }
    };
}

id_impls!(ObjId);
id_impls!(MorId);

/// A named morphism together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorRec {
    pub name: MorId,
    pub src: ObjId,
    pub tgt: ObjId,
}

impl MorRec {
    pub fn new(name: impl Into<MorId>, src: impl Into<ObjId>, tgt: impl Into<ObjId>) -> Self {
        MorRec { name: name.into(), src: src.into(), tgt: tgt.into() }
    }
}

/// A law violation found while validating category data.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("duplicate object name {0}")]
    DuplicateObject(ObjId),
    #[error("duplicate morphism name {0}")]
    DuplicateMorphism(MorId),
    #[error("morphism {morphism} refers to unknown object {object}")]
    UnknownObject { morphism: MorId, object: ObjId },
    #[error("no identity assigned to object {0}")]
    MissingIdentity(ObjId),
    #[error("identity {identity} of {object} does not have src = tgt = {object}")]
    BadIdentityEndpoints { object: ObjId, identity: MorId },
    #[error("identity entry for {object} names unknown morphism {identity}")]
    UnknownIdentity { object: ObjId, identity: MorId },
    #[error("composable pair ({g}, {f}) has no entry in the composition table")]
    PartialCompose { g: MorId, f: MorId },
    #[error("composition table entry ({g}, {f}) is not a composable pair or has bad endpoints")]
    BadEndpoints { g: MorId, f: MorId },
    #[error("identity law fails: compose involving {identity} at {object} is not the identity law value")]
    IdentityLaw { object: ObjId, identity: MorId },
    #[error("associativity fails on the composable triple ({h}, {g}, {f})")]
    NonAssociative { h: MorId, g: MorId, f: MorId },
    #[error("composition table refers to unknown morphism {0}")]
    UnknownMorphism(MorId),
}

/// A functoriality violation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map misses or invents objects (offender: {0})")]
    ObjectMapNotTotal(ObjId),
    #[error("morphism map misses or invents morphisms (offender: {0})")]
    MorphismMapNotTotal(MorId),
    #[error("image of {morphism} does not respect the object map on src/tgt")]
    EndpointMismatch { morphism: MorId },
    #[error("identity of {object} is not sent to the identity of its image")]
    IdentityNotPreserved { object: ObjId },
    #[error("composite of ({g}, {f}) is not preserved")]
    CompositionNotPreserved { g: MorId, f: MorId },
    #[error("source and target categories do not match for composition")]
    DomainMismatch,
}

/// A non-empty list of validation failures, reported together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violations<E>(pub Vec<E>);

impl<E: fmt::Display> fmt::Display for Violations<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl<E: fmt::Display + fmt::Debug> std::error::Error for Violations<E> {}

/// An explicit finite category.
///
/// The composition table is keyed `(g, f) -> g∘f` and is defined exactly on
/// the composable pairs (`tgt f = src g`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinCat {
    objects: Vec<ObjId>,
    morphisms: Vec<MorRec>,
    identities: BTreeMap<ObjId, MorId>,
    compose: BTreeMap<(MorId, MorId), MorId>,
    endpoints: BTreeMap<MorId, (ObjId, ObjId)>,
}

impl FinCat {
    /// Validate raw category data. On success the value satisfies every
    /// category law exhaustively; on failure the complete list of violations
    /// is returned.
    pub fn new(
        objects: Vec<ObjId>,
        morphisms: Vec<MorRec>,
        identities: BTreeMap<ObjId, MorId>,
        compose: BTreeMap<(MorId, MorId), MorId>,
    ) -> Result<FinCat, Violations<CatError>> {
        let mut errs = Vec::new();

        let mut obj_set = BTreeSet::new();
        for o in &objects {
            if !obj_set.insert(o.clone()) {
                errs.push(CatError::DuplicateObject(o.clone()));
            }
        }
        let mut endpoints = BTreeMap::new();
        for m in &morphisms {
            if endpoints.insert(m.name.clone(), (m.src.clone(), m.tgt.clone())).is_some() {
                errs.push(CatError::DuplicateMorphism(m.name.clone()));
            }
            for o in [&m.src, &m.tgt] {
                if !obj_set.contains(o) {
                    errs.push(CatError::UnknownObject { morphism: m.name.clone(), object: o.clone() });
                }
            }
        }
        if !errs.is_empty() {
            return Err(Violations(errs));
        }

        for o in &objects {
            match identities.get(o) {
                None => errs.push(CatError::MissingIdentity(o.clone())),
                Some(id) => match endpoints.get(id) {
                    None => errs.push(CatError::UnknownIdentity { object: o.clone(), identity: id.clone() }),
                    Some((s, t)) if s != o || t != o => {
                        errs.push(CatError::BadIdentityEndpoints { object: o.clone(), identity: id.clone() })
                    }
                    _ => {}
                },
            }
        }
        for (o, id) in identities.iter().filter(|(o, _)| !obj_set.contains(*o)) {
            errs.push(CatError::UnknownObject { morphism: id.clone(), object: o.clone() });
        }
        for ((g, f), gf) in &compose {
            for m in [g, f, gf] {
                if !endpoints.contains_key(m) {
                    errs.push(CatError::UnknownMorphism(m.clone()));
                }
            }
        }
        if !errs.is_empty() {
            return Err(Violations(errs));
        }

        // Composition must exist exactly on composable pairs and respect
        // endpoints: compose(g, f) : src f -> tgt g.
        for f in &morphisms {
            for g in &morphisms {
                let composable = f.tgt == g.src;
                match compose.get(&(g.name.clone(), f.name.clone())) {
                    None if composable => {
                        errs.push(CatError::PartialCompose { g: g.name.clone(), f: f.name.clone() })
                    }
                    Some(_) if !composable => {
                        errs.push(CatError::BadEndpoints { g: g.name.clone(), f: f.name.clone() })
                    }
                    Some(gf) => {
                        let (s, t) = &endpoints[gf];
                        if *s != f.src || *t != g.tgt {
                            errs.push(CatError::BadEndpoints { g: g.name.clone(), f: f.name.clone() });
                        }
                    }
                    None => {}
                }
            }
        }
        if !errs.is_empty() {
            return Err(Violations(errs));
        }

        let cat = FinCat { objects, morphisms, identities, compose, endpoints };

        // Unit laws.
        for m in &cat.morphisms {
            let ids = cat.identities[&m.src].clone();
            let idt = cat.identities[&m.tgt].clone();
            if cat.compose[&(m.name.clone(), ids.clone())] != m.name {
                errs.push(CatError::IdentityLaw { object: m.src.clone(), identity: ids });
            }
            if cat.compose[&(idt.clone(), m.name.clone())] != m.name {
                errs.push(CatError::IdentityLaw { object: m.tgt.clone(), identity: idt });
            }
        }

        // Associativity over every composable triple.
        for f in &cat.morphisms {
            for g in cat.morphisms_from(&f.tgt) {
                let gf = cat.compose[&(g.name.clone(), f.name.clone())].clone();
                for h in cat.morphisms_from(&g.tgt) {
                    let hg = cat.compose[&(h.name.clone(), g.name.clone())].clone();
                    let left = &cat.compose[&(h.name.clone(), gf.clone())];
                    let right = &cat.compose[&(hg, f.name.clone())];
                    if left != right {
                        errs.push(CatError::NonAssociative {
                            h: h.name.clone(),
                            g: g.name.clone(),
                            f: f.name.clone(),
                        });
                    }
                }
            }
        }

        if errs.is_empty() {
            Ok(cat)
        } else {
            Err(Violations(errs))
        }
    }

    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorRec] {
        &self.morphisms
    }

    pub fn identities(&self) -> &BTreeMap<ObjId, MorId> {
        &self.identities
    }

    pub fn compose_table(&self) -> &BTreeMap<(MorId, MorId), MorId> {
        &self.compose
    }

    pub fn has_object(&self, o: &ObjId) -> bool {
        self.identities.contains_key(o)
    }

    pub fn has_morphism(&self, m: &MorId) -> bool {
        self.endpoints.contains_key(m)
    }

    pub fn src(&self, m: &MorId) -> &ObjId {
        &self.endpoints[m].0
    }

    pub fn tgt(&self, m: &MorId) -> &ObjId {
        &self.endpoints[m].1
    }

    pub fn identity_of(&self, o: &ObjId) -> &MorId {
        &self.identities[o]
    }

    pub fn is_identity(&self, m: &MorId) -> bool {
        self.identities.get(self.src(m)) == Some(m)
    }

    /// The composite `g∘f`, defined when `tgt f = src g`.
    pub fn compose(&self, g: &MorId, f: &MorId) -> Option<&MorId> {
        self.compose.get(&(g.clone(), f.clone()))
    }

    /// Morphisms with the given source, in table order.
    pub fn morphisms_from<'a>(&'a self, o: &'a ObjId) -> impl Iterator<Item = &'a MorRec> {
        self.morphisms.iter().filter(move |m| &m.src == o)
    }

    /// Morphisms `a -> b`, in table order.
    pub fn hom(&self, a: &ObjId, b: &ObjId) -> Vec<&MorRec> {
        self.morphisms.iter().filter(|m| &m.src == a && &m.tgt == b).collect()
    }

    /// A category is discrete when it has no non-identity morphisms.
    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    /// At most one morphism between any ordered pair of objects.
    pub fn is_thin(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.morphisms.iter().all(|m| seen.insert((m.src.clone(), m.tgt.clone())))
    }

    /// The opposite category: same names, endpoints and composition reversed.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorRec { name: m.name.clone(), src: m.tgt.clone(), tgt: m.src.clone() })
            .collect();
        let compose = self
            .compose
            .iter()
            .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
            .collect();
        FinCat::new(self.objects.clone(), morphisms, self.identities.clone(), compose)
            .expect("opposite of a valid category is valid")
    }
}

/// A functor between explicit finite categories, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functor {
    source: FinCat,
    target: FinCat,
    object_map: BTreeMap<ObjId, ObjId>,
    morphism_map: BTreeMap<MorId, MorId>,
}

impl Functor {
    /// Validate raw functor data against functoriality; all violations are
    /// reported.
    pub fn new(
        source: FinCat,
        target: FinCat,
        object_map: BTreeMap<ObjId, ObjId>,
        morphism_map: BTreeMap<MorId, MorId>,
    ) -> Result<Functor, Violations<FunctorError>> {
        let mut errs = Vec::new();

        for o in source.objects() {
            match object_map.get(o) {
                Some(img) if target.has_object(img) => {}
                _ => errs.push(FunctorError::ObjectMapNotTotal(o.clone())),
            }
        }
        for (o, _) in object_map.iter().filter(|(o, _)| !source.has_object(o)) {
            errs.push(FunctorError::ObjectMapNotTotal(o.clone()));
        }
        for m in source.morphisms() {
            match morphism_map.get(&m.name) {
                Some(img) if target.has_morphism(img) => {}
                _ => errs.push(FunctorError::MorphismMapNotTotal(m.name.clone())),
            }
        }
        for (m, _) in morphism_map.iter().filter(|(m, _)| !source.has_morphism(m)) {
            errs.push(FunctorError::MorphismMapNotTotal(m.clone()));
        }
        if !errs.is_empty() {
            return Err(Violations(errs));
        }

        for m in source.morphisms() {
            let img = &morphism_map[&m.name];
            if target.src(img) != &object_map[&m.src] || target.tgt(img) != &object_map[&m.tgt] {
                errs.push(FunctorError::EndpointMismatch { morphism: m.name.clone() });
            }
        }
        for o in source.objects() {
            if &morphism_map[source.identity_of(o)] != target.identity_of(&object_map[o]) {
                errs.push(FunctorError::IdentityNotPreserved { object: o.clone() });
            }
        }
        for ((g, f), gf) in source.compose_table() {
            let img = target.compose(&morphism_map[g], &morphism_map[f]);
            if img != Some(&morphism_map[gf]) {
                errs.push(FunctorError::CompositionNotPreserved { g: g.clone(), f: f.clone() });
            }
        }

        if errs.is_empty() {
            Ok(Functor { source, target, object_map, morphism_map })
        } else {
            Err(Violations(errs))
        }
    }

    pub fn identity(cat: &FinCat) -> Functor {
        let object_map = cat.objects().iter().map(|o| (o.clone(), o.clone())).collect();
        let morphism_map = cat.morphisms().iter().map(|m| (m.name.clone(), m.name.clone())).collect();
        Functor::new(cat.clone(), cat.clone(), object_map, morphism_map)
            .expect("identity functor is valid")
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn object_map(&self) -> &BTreeMap<ObjId, ObjId> {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &BTreeMap<MorId, MorId> {
        &self.morphism_map
    }

    pub fn on_object(&self, o: &ObjId) -> &ObjId {
        &self.object_map[o]
    }

    pub fn on_morphism(&self, m: &MorId) -> &MorId {
        &self.morphism_map[m]
    }

    /// Composition in diagram order: `self : A -> B` then `other : B -> C`.
    pub fn then(&self, other: &Functor) -> Result<Functor, Violations<FunctorError>> {
        if self.target != other.source {
            return Err(Violations(vec![FunctorError::DomainMismatch]));
        }
        let object_map = self
            .object_map
            .iter()
            .map(|(o, img)| (o.clone(), other.object_map[img].clone()))
            .collect();
        let morphism_map = self
            .morphism_map
            .iter()
            .map(|(m, img)| (m.clone(), other.morphism_map[img].clone()))
            .collect();
        Functor::new(self.source.clone(), other.target.clone(), object_map, morphism_map)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let images: BTreeSet<_> = self.object_map.values().collect();
        images.len() == self.source.objects().len()
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let images: BTreeSet<_> = self.object_map.values().collect();
        self.target.objects().iter().all(|o| images.contains(o))
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let images: BTreeSet<_> = self.morphism_map.values().collect();
        images.len() == self.source.morphisms().len()
    }

    pub fn is_surjective_on_morphisms(&self) -> bool {
        let images: BTreeSet<_> = self.morphism_map.values().collect();
        self.target.morphisms().iter().all(|m| images.contains(&m.name))
    }

    /// Every hom-set map `Hom(a, a') -> Hom(fa, fa')` is bijective.
    pub fn is_fully_faithful(&self) -> bool {
        for a in self.source.objects() {
            for a2 in self.source.objects() {
                let dom_hom = self.source.hom(a, a2);
                let images: BTreeSet<_> =
                    dom_hom.iter().map(|m| self.morphism_map[&m.name].clone()).collect();
                if images.len() != dom_hom.len() {
                    return false;
                }
                let cod_hom = self.target.hom(&self.object_map[a], &self.object_map[a2]);
                if cod_hom.len() != images.len()
                    || !cod_hom.iter().all(|m| images.contains(&m.name))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Objects of the target hit by the object map, in target order.
    pub fn image_objects(&self) -> Vec<ObjId> {
        let images: BTreeSet<_> = self.object_map.values().cloned().collect();
        self.target.objects().iter().filter(|o| images.contains(o)).cloned().collect()
    }
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// The product category `A × B` with its two projections.
///
/// Objects are pairs `(a,b)`, morphisms pairs `(u,v)`, composition
/// componentwise.
pub fn product_cat(a: &FinCat, b: &FinCat) -> (FinCat, Functor, Functor) {
    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            objects.push(ObjId::new(pair_name(x.as_str(), y.as_str())));
            obj_pairs.push((x.clone(), y.clone()));
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    for u in a.morphisms() {
        for v in b.morphisms() {
            morphisms.push(MorRec::new(
                pair_name(u.name.as_str(), v.name.as_str()),
                pair_name(u.src.as_str(), v.src.as_str()),
                pair_name(u.tgt.as_str(), v.tgt.as_str()),
            ));
            mor_pairs.push((u.name.clone(), v.name.clone()));
        }
    }
    let identities = obj_pairs
        .iter()
        .map(|(x, y)| {
            (
                ObjId::new(pair_name(x.as_str(), y.as_str())),
                MorId::new(pair_name(a.identity_of(x).as_str(), b.identity_of(y).as_str())),
            )
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (f, (f1, f2)) in morphisms.iter().zip(&mor_pairs) {
        for (g, (g1, g2)) in morphisms.iter().zip(&mor_pairs) {
            if f.tgt == g.src {
                let c1 = a.compose(g1, f1).expect("componentwise composable");
                let c2 = b.compose(g2, f2).expect("componentwise composable");
                compose.insert(
                    (g.name.clone(), f.name.clone()),
                    MorId::new(pair_name(c1.as_str(), c2.as_str())),
                );
            }
        }
    }
    let prod = FinCat::new(objects, morphisms, identities, compose)
        .expect("product of valid categories is valid");

    let proj0 = Functor::new(
        prod.clone(),
        a.clone(),
        obj_pairs
            .iter()
            .map(|(x, y)| (ObjId::new(pair_name(x.as_str(), y.as_str())), x.clone()))
            .collect(),
        prod.morphisms()
            .iter()
            .zip(&mor_pairs)
            .map(|(m, (u, _))| (m.name.clone(), u.clone()))
            .collect(),
    )
    .expect("product projection is a functor");
    let proj1 = Functor::new(
        prod.clone(),
        b.clone(),
        obj_pairs
            .iter()
            .map(|(x, y)| (ObjId::new(pair_name(x.as_str(), y.as_str())), y.clone()))
            .collect(),
        prod.morphisms()
            .iter()
            .zip(&mor_pairs)
            .map(|(m, (_, v))| (m.name.clone(), v.clone()))
            .collect(),
    )
    .expect("product projection is a functor");
    (prod, proj0, proj1)
}

fn inl(s: &str) -> String {
    format!("inl({s})")
}

fn inr(s: &str) -> String {
    format!("inr({s})")
}

/// The coproduct category `A + B` with its two injections.
///
/// Disjoint union of objects and morphisms, no cross-morphisms; summands
/// are tagged `inl(..)` and `inr(..)`.
pub fn coproduct_cat(a: &FinCat, b: &FinCat) -> (FinCat, Functor, Functor) {
    let mut objects: Vec<ObjId> = a.objects().iter().map(|o| ObjId::new(inl(o.as_str()))).collect();
    objects.extend(b.objects().iter().map(|o| ObjId::new(inr(o.as_str()))));

    let mut morphisms: Vec<MorRec> = a
        .morphisms()
        .iter()
        .map(|m| MorRec::new(inl(m.name.as_str()), inl(m.src.as_str()), inl(m.tgt.as_str())))
        .collect();
    morphisms.extend(
        b.morphisms()
            .iter()
            .map(|m| MorRec::new(inr(m.name.as_str()), inr(m.src.as_str()), inr(m.tgt.as_str()))),
    );

    let mut identities = BTreeMap::new();
    for (o, m) in a.identities() {
        identities.insert(ObjId::new(inl(o.as_str())), MorId::new(inl(m.as_str())));
    }
    for (o, m) in b.identities() {
        identities.insert(ObjId::new(inr(o.as_str())), MorId::new(inr(m.as_str())));
    }

    let mut compose = BTreeMap::new();
    for ((g, f), gf) in a.compose_table() {
        compose.insert(
            (MorId::new(inl(g.as_str())), MorId::new(inl(f.as_str()))),
            MorId::new(inl(gf.as_str())),
        );
    }
    for ((g, f), gf) in b.compose_table() {
        compose.insert(
            (MorId::new(inr(g.as_str())), MorId::new(inr(f.as_str()))),
            MorId::new(inr(gf.as_str())),
        );
    }
    let sum = FinCat::new(objects, morphisms, identities, compose)
        .expect("coproduct of valid categories is valid");

    let inj_a = Functor::new(
        a.clone(),
        sum.clone(),
        a.objects().iter().map(|o| (o.clone(), ObjId::new(inl(o.as_str())))).collect(),
        a.morphisms().iter().map(|m| (m.name.clone(), MorId::new(inl(m.name.as_str())))).collect(),
    )
    .expect("coproduct injection is a functor");
    let inj_b = Functor::new(
        b.clone(),
        sum.clone(),
        b.objects().iter().map(|o| (o.clone(), ObjId::new(inr(o.as_str())))).collect(),
        b.morphisms().iter().map(|m| (m.name.clone(), MorId::new(inr(m.name.as_str())))).collect(),
    )
    .expect("coproduct injection is a functor");
    (sum, inj_a, inj_b)
}

/// The pullback `A ×_B C` of a cospan of functors with its two projections.
///
/// Objects are pairs `(a,c)` with `f a = g c`; morphisms are pairs agreeing
/// under `f` and `g`.
pub fn pullback_cat(f: &Functor, g: &Functor) -> (FinCat, Functor, Functor) {
    assert_eq!(f.target(), g.target(), "pullback requires a common codomain");
    let (a, c) = (f.source(), g.source());

    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    for x in a.objects() {
        for y in c.objects() {
            if f.on_object(x) == g.on_object(y) {
                objects.push(ObjId::new(pair_name(x.as_str(), y.as_str())));
                obj_pairs.push((x.clone(), y.clone()));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    for u in a.morphisms() {
        for v in c.morphisms() {
            if f.on_morphism(&u.name) == g.on_morphism(&v.name) {
                morphisms.push(MorRec::new(
                    pair_name(u.name.as_str(), v.name.as_str()),
                    pair_name(u.src.as_str(), v.src.as_str()),
                    pair_name(u.tgt.as_str(), v.tgt.as_str()),
                ));
                mor_pairs.push((u.name.clone(), v.name.clone()));
            }
        }
    }
    let identities = obj_pairs
        .iter()
        .map(|(x, y)| {
            (
                ObjId::new(pair_name(x.as_str(), y.as_str())),
                MorId::new(pair_name(a.identity_of(x).as_str(), c.identity_of(y).as_str())),
            )
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (m1, (f1, f2)) in morphisms.iter().zip(&mor_pairs) {
        for (m2, (g1, g2)) in morphisms.iter().zip(&mor_pairs) {
            if m1.tgt == m2.src {
                let c1 = a.compose(g1, f1).expect("composable");
                let c2 = c.compose(g2, f2).expect("composable");
                compose.insert(
                    (m2.name.clone(), m1.name.clone()),
                    MorId::new(pair_name(c1.as_str(), c2.as_str())),
                );
            }
        }
    }
    let pb = FinCat::new(objects, morphisms, identities, compose)
        .expect("pullback of valid functors is valid");

    let proj0 = Functor::new(
        pb.clone(),
        a.clone(),
        obj_pairs
            .iter()
            .map(|(x, y)| (ObjId::new(pair_name(x.as_str(), y.as_str())), x.clone()))
            .collect(),
        pb.morphisms()
            .iter()
            .zip(&mor_pairs)
            .map(|(m, (u, _))| (m.name.clone(), u.clone()))
            .collect(),
    )
    .expect("pullback projection is a functor");
    let proj1 = Functor::new(
        pb.clone(),
        c.clone(),
        obj_pairs
            .iter()
            .map(|(x, y)| (ObjId::new(pair_name(x.as_str(), y.as_str())), y.clone()))
            .collect(),
        pb.morphisms()
            .iter()
            .zip(&mor_pairs)
            .map(|(m, (_, v))| (m.name.clone(), v.clone()))
            .collect(),
    )
    .expect("pullback projection is a functor");
    (pb, proj0, proj1)
}

/// The equaliser of a parallel pair of functors: the subcategory of the
/// common source on which they agree, with its inclusion.
pub fn equaliser_cat(f: &Functor, g: &Functor) -> (FinCat, Functor) {
    assert_eq!(f.source(), g.source(), "equaliser requires a parallel pair");
    assert_eq!(f.target(), g.target(), "equaliser requires a parallel pair");
    let a = f.source();

    let objects: Vec<ObjId> =
        a.objects().iter().filter(|o| f.on_object(o) == g.on_object(o)).cloned().collect();
    let obj_set: BTreeSet<_> = objects.iter().cloned().collect();
    let morphisms: Vec<MorRec> = a
        .morphisms()
        .iter()
        .filter(|m| f.on_morphism(&m.name) == g.on_morphism(&m.name))
        .cloned()
        .collect();
    debug_assert!(morphisms.iter().all(|m| obj_set.contains(&m.src) && obj_set.contains(&m.tgt)));
    let mor_set: BTreeSet<_> = morphisms.iter().map(|m| m.name.clone()).collect();
    let identities =
        objects.iter().map(|o| (o.clone(), a.identity_of(o).clone())).collect();
    let compose = a
        .compose_table()
        .iter()
        .filter(|((gm, fm), _)| mor_set.contains(gm) && mor_set.contains(fm))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let e = FinCat::new(objects.clone(), morphisms.clone(), identities, compose)
        .expect("equaliser subcategory is valid");
    let incl = Functor::new(
        e.clone(),
        a.clone(),
        objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        morphisms.iter().map(|m| (m.name.clone(), m.name.clone())).collect(),
    )
    .expect("equaliser inclusion is a functor");
    (e, incl)
}

/// The full subcategory of `A` on an object subset, with its inclusion.
pub fn full_subcategory(a: &FinCat, objs: &BTreeSet<ObjId>) -> (FinCat, Functor) {
    assert!(objs.iter().all(|o| a.has_object(o)), "subset of the category's objects");
    let objects: Vec<ObjId> = a.objects().iter().filter(|o| objs.contains(o)).cloned().collect();
    let morphisms: Vec<MorRec> = a
        .morphisms()
        .iter()
        .filter(|m| objs.contains(&m.src) && objs.contains(&m.tgt))
        .cloned()
        .collect();
    let mor_set: BTreeSet<_> = morphisms.iter().map(|m| m.name.clone()).collect();
    let identities = objects.iter().map(|o| (o.clone(), a.identity_of(o).clone())).collect();
    let compose = a
        .compose_table()
        .iter()
        .filter(|((g, f), _)| mor_set.contains(g) && mor_set.contains(f))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let sub = FinCat::new(objects.clone(), morphisms.clone(), identities, compose)
        .expect("full subcategory is valid");
    let incl = Functor::new(
        sub.clone(),
        a.clone(),
        objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        morphisms.iter().map(|m| (m.name.clone(), m.name.clone())).collect(),
    )
    .expect("full subcategory inclusion is a functor");
    (sub, incl)
}

/// The discrete category on the objects of `A`, with its identity-on-objects
/// inclusion.
pub fn discrete_objects(a: &FinCat) -> (FinCat, Functor) {
    let objects = a.objects().to_vec();
    let morphisms: Vec<MorRec> = objects
        .iter()
        .map(|o| MorRec { name: a.identity_of(o).clone(), src: o.clone(), tgt: o.clone() })
        .collect();
    let identities: BTreeMap<_, _> =
        objects.iter().map(|o| (o.clone(), a.identity_of(o).clone())).collect();
    let compose = morphisms
        .iter()
        .map(|m| ((m.name.clone(), m.name.clone()), m.name.clone()))
        .collect();
    let disc = FinCat::new(objects.clone(), morphisms, identities.clone(), compose)
        .expect("discrete category is valid");
    let incl = Functor::new(
        disc.clone(),
        a.clone(),
        objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        identities.values().map(|m| (m.clone(), m.clone())).collect(),
    )
    .expect("discrete inclusion is a functor");
    (disc, incl)
}

/// Search for an isomorphism of categories by bounded backtracking over
/// object bijections; the morphism bijection is reconstructed hom-set by
/// hom-set. Returns the object and morphism bijections on success.
pub fn fincats_isomorphic(
    a: &FinCat,
    b: &FinCat,
) -> Option<(BTreeMap<ObjId, ObjId>, BTreeMap<MorId, MorId>)> {
    if a.objects().len() != b.objects().len() || a.morphisms().len() != b.morphisms().len() {
        return None;
    }
    let mut object_map = BTreeMap::new();
    let mut used = BTreeSet::new();
    search_object_bijection(a, b, 0, &mut object_map, &mut used)
}

fn search_object_bijection(
    a: &FinCat,
    b: &FinCat,
    idx: usize,
    object_map: &mut BTreeMap<ObjId, ObjId>,
    used: &mut BTreeSet<ObjId>,
) -> Option<(BTreeMap<ObjId, ObjId>, BTreeMap<MorId, MorId>)> {
    if idx == a.objects().len() {
        return extend_to_morphisms(a, b, object_map)
            .map(|mm| (object_map.clone(), mm));
    }
    let x = a.objects()[idx].clone();
    for y in b.objects() {
        if used.contains(y) {
            continue;
        }
        // Cheap degree pruning: hom-set sizes with already-placed objects.
        let compatible = object_map.iter().all(|(px, py)| {
            a.hom(&x, px).len() == b.hom(y, py).len()
                && a.hom(px, &x).len() == b.hom(py, y).len()
        }) && a.hom(&x, &x).len() == b.hom(y, y).len();
        if !compatible {
            continue;
        }
        object_map.insert(x.clone(), y.clone());
        used.insert(y.clone());
        if let Some(found) = search_object_bijection(a, b, idx + 1, object_map, used) {
            return Some(found);
        }
        object_map.remove(&x);
        used.remove(y);
    }
    None
}

fn extend_to_morphisms(
    a: &FinCat,
    b: &FinCat,
    object_map: &BTreeMap<ObjId, ObjId>,
) -> Option<BTreeMap<MorId, MorId>> {
    let mut mor_map = BTreeMap::new();
    let mut used = BTreeSet::new();
    search_morphism_bijection(a, b, object_map, 0, &mut mor_map, &mut used)
}

fn search_morphism_bijection(
    a: &FinCat,
    b: &FinCat,
    object_map: &BTreeMap<ObjId, ObjId>,
    idx: usize,
    mor_map: &mut BTreeMap<MorId, MorId>,
    used: &mut BTreeSet<MorId>,
) -> Option<BTreeMap<MorId, MorId>> {
    if idx == a.morphisms().len() {
        return check_structure(a, b, object_map, mor_map).then(|| mor_map.clone());
    }
    let m = &a.morphisms()[idx];
    let candidates: Vec<MorId> = b
        .hom(&object_map[&m.src], &object_map[&m.tgt])
        .iter()
        .map(|r| r.name.clone())
        .collect();
    for cand in candidates {
        if used.contains(&cand) {
            continue;
        }
        if a.is_identity(&m.name) != b.is_identity(&cand) {
            continue;
        }
        mor_map.insert(m.name.clone(), cand.clone());
        used.insert(cand.clone());
        if let Some(found) = search_morphism_bijection(a, b, object_map, idx + 1, mor_map, used) {
            return Some(found);
        }
        mor_map.remove(&m.name);
        used.remove(&cand);
    }
    None
}

fn check_structure(
    a: &FinCat,
    b: &FinCat,
    object_map: &BTreeMap<ObjId, ObjId>,
    mor_map: &BTreeMap<MorId, MorId>,
) -> bool {
    Functor::new(a.clone(), b.clone(), object_map.clone(), mor_map.clone()).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds;

    #[test]
    fn terminal_category_is_valid() {
        let one = seeds::terminal();
        assert_eq!(one.objects().len(), 1);
        assert_eq!(one.morphisms().len(), 1);
    }

    #[test]
    fn walking_arrow_is_valid() {
        let two = seeds::walking_arrow();
        assert_eq!(two.objects().len(), 2);
        assert_eq!(two.morphisms().len(), 3);
        assert!(two.is_thin());
        assert!(!two.is_discrete());
    }

    #[test]
    fn broken_identity_law_is_reported() {
        // Same data as the walking arrow but compose(u, 1x) points at 1x.
        let objects = vec![ObjId::new("x"), ObjId::new("y")];
        let morphisms = vec![
            MorRec::new("1x", "x", "x"),
            MorRec::new("1y", "y", "y"),
            MorRec::new("u", "x", "y"),
        ];
        let identities =
            [("x", "1x"), ("y", "1y")].map(|(o, m)| (ObjId::new(o), MorId::new(m))).into();
        let mut compose = BTreeMap::new();
        for (g, f, gf) in [
            ("1x", "1x", "1x"),
            ("1y", "1y", "1y"),
            ("u", "1x", "1x"), // violates the right unit law
            ("1y", "u", "u"),
        ] {
            compose.insert((MorId::new(g), MorId::new(f)), MorId::new(gf));
        }
        let err = FinCat::new(objects, morphisms, identities, compose).unwrap_err();
        assert!(err.0.iter().any(|e| matches!(
            e,
            CatError::IdentityLaw { .. } | CatError::BadEndpoints { .. }
        )));
    }

    #[test]
    fn missing_composite_is_reported() {
        let objects = vec![ObjId::new("x"), ObjId::new("y")];
        let morphisms = vec![
            MorRec::new("1x", "x", "x"),
            MorRec::new("1y", "y", "y"),
            MorRec::new("u", "x", "y"),
        ];
        let identities =
            [("x", "1x"), ("y", "1y")].map(|(o, m)| (ObjId::new(o), MorId::new(m))).into();
        let mut compose = BTreeMap::new();
        for (g, f, gf) in [("1x", "1x", "1x"), ("1y", "1y", "1y"), ("u", "1x", "u")] {
            compose.insert((MorId::new(g), MorId::new(f)), MorId::new(gf));
        }
        let err = FinCat::new(objects, morphisms, identities, compose).unwrap_err();
        assert!(err.0.contains(&CatError::PartialCompose { g: MorId::new("1y"), f: MorId::new("u") }));
    }

    #[test]
    fn identity_functor_validates() {
        let two = seeds::walking_arrow();
        let id = Functor::identity(&two);
        assert!(id.is_fully_faithful());
        assert!(id.is_injective_on_objects() && id.is_surjective_on_objects());
    }

    #[test]
    fn functor_to_terminal_validates() {
        let two = seeds::walking_arrow();
        let one = seeds::terminal();
        let f = Functor::new(
            two.clone(),
            one.clone(),
            two.objects().iter().map(|o| (o.clone(), ObjId::new("*"))).collect(),
            two.morphisms().iter().map(|m| (m.name.clone(), MorId::new("1*"))).collect(),
        )
        .unwrap();
        assert!(f.is_surjective_on_objects());
        assert!(!f.is_injective_on_objects());
    }

    #[test]
    fn endpoint_mismatch_is_reported() {
        // Send u to an identity while keeping x and y apart.
        let two = seeds::walking_arrow();
        let object_map: BTreeMap<_, _> =
            two.objects().iter().map(|o| (o.clone(), o.clone())).collect();
        let morphism_map = [("1x", "1x"), ("1y", "1y"), ("u", "1x")]
            .map(|(m, i)| (MorId::new(m), MorId::new(i)))
            .into();
        let err = Functor::new(two.clone(), two, object_map, morphism_map).unwrap_err();
        assert!(err.0.iter().any(|e| matches!(e, FunctorError::EndpointMismatch { .. })));
    }

    #[test]
    fn product_of_walking_arrows() {
        let two = seeds::walking_arrow();
        let (p, proj0, proj1) = product_cat(&two, &two);
        // Independently: objects are all pairs, morphisms are all pairs.
        assert_eq!(p.objects().len(), two.objects().len() * two.objects().len());
        assert_eq!(p.morphisms().len(), two.morphisms().len() * two.morphisms().len());
        assert_eq!(p.objects().len(), 4);
        assert_eq!(p.morphisms().len(), 9);
        assert_eq!(proj0.source(), &p);
        assert_eq!(proj1.source(), &p);
    }

    #[test]
    fn product_with_terminal_is_isomorphic_to_factor() {
        let two = seeds::walking_arrow();
        let one = seeds::terminal();
        let (p, _, _) = product_cat(&two, &one);
        assert!(fincats_isomorphic(&p, &two).is_some());
    }

    #[test]
    fn product_of_discretes_is_discrete() {
        let d2 = seeds::discrete_two();
        let (p, _, _) = product_cat(&d2, &d2);
        assert!(p.is_discrete());
        assert_eq!(p.objects().len(), 4);
    }

    #[test]
    fn coproduct_counts_and_units() {
        let two = seeds::walking_arrow();
        let one = seeds::terminal();
        let zero = seeds::initial();
        let (s, _, _) = coproduct_cat(&two, &one);
        assert_eq!(s.objects().len(), 3);
        assert_eq!(s.morphisms().len(), 4);
        let (z, _, _) = coproduct_cat(&zero, &two);
        assert!(fincats_isomorphic(&z, &two).is_some());
        let (d, _, _) = coproduct_cat(&one, &one);
        assert!(fincats_isomorphic(&d, &seeds::discrete_two()).is_some());
    }

    #[test]
    fn coproduct_injections_are_fully_faithful() {
        let two = seeds::walking_arrow();
        let d2 = seeds::discrete_two();
        let (_, inj_a, inj_b) = coproduct_cat(&two, &d2);
        for inj in [inj_a, inj_b] {
            assert!(inj.is_injective_on_objects());
            assert!(inj.is_fully_faithful());
        }
    }

    #[test]
    fn pullback_over_terminal_equals_product() {
        let two = seeds::walking_arrow();
        let one = seeds::terminal();
        let bang = Functor::new(
            two.clone(),
            one.clone(),
            two.objects().iter().map(|o| (o.clone(), ObjId::new("*"))).collect(),
            two.morphisms().iter().map(|m| (m.name.clone(), MorId::new("1*"))).collect(),
        )
        .unwrap();
        let (pb, _, _) = pullback_cat(&bang, &bang);
        let (prod, _, _) = product_cat(&two, &two);
        assert_eq!(pb, prod);
    }

    #[test]
    fn pullback_of_identity_recovers_domain() {
        let two = seeds::walking_arrow();
        let id = Functor::identity(&two);
        let (pb, _, _) = pullback_cat(&id, &id);
        assert!(fincats_isomorphic(&pb, &two).is_some());
    }

    #[test]
    fn pullback_of_disjoint_points_is_empty() {
        let one = seeds::terminal();
        let d2 = seeds::discrete_two();
        let mk = |target_obj: &str, target_id: &str| {
            Functor::new(
                one.clone(),
                d2.clone(),
                [(ObjId::new("*"), ObjId::new(target_obj))].into(),
                [(MorId::new("1*"), MorId::new(target_id))].into(),
            )
            .unwrap()
        };
        let f = mk("x", "1x");
        let g = mk("y", "1y");
        let (pb, _, _) = pullback_cat(&f, &g);
        assert!(pb.objects().is_empty());
    }

    #[test]
    fn equaliser_of_equal_pair_is_whole_category() {
        let two = seeds::walking_arrow();
        let id = Functor::identity(&two);
        let (e, _) = equaliser_cat(&id, &id);
        assert_eq!(&e, &two);
    }

    #[test]
    fn equaliser_of_agreeing_on_x_only() {
        let two = seeds::walking_arrow();
        let id = Functor::identity(&two);
        // Collapse everything onto x.
        let collapse = Functor::new(
            two.clone(),
            two.clone(),
            two.objects().iter().map(|o| (o.clone(), ObjId::new("x"))).collect(),
            two.morphisms().iter().map(|m| (m.name.clone(), MorId::new("1x"))).collect(),
        )
        .unwrap();
        let (e, _) = equaliser_cat(&id, &collapse);
        assert_eq!(e.objects(), &[ObjId::new("x")]);
        assert_eq!(e.morphisms().len(), 1);
    }

    #[test]
    fn equaliser_of_distinct_points_is_empty() {
        let one = seeds::terminal();
        let d2 = seeds::discrete_two();
        let pick = |obj: &str, id: &str| {
            Functor::new(
                one.clone(),
                d2.clone(),
                [(ObjId::new("*"), ObjId::new(obj))].into(),
                [(MorId::new("1*"), MorId::new(id))].into(),
            )
            .unwrap()
        };
        let (e, _) = equaliser_cat(&pick("x", "1x"), &pick("y", "1y"));
        assert!(e.objects().is_empty());
        assert!(e.morphisms().is_empty());
    }

    #[test]
    fn full_subcategory_cases() {
        let two = seeds::walking_arrow();
        let all: BTreeSet<_> = two.objects().iter().cloned().collect();
        let (s, _) = full_subcategory(&two, &all);
        assert_eq!(&s, &two);
        let (empty, _) = full_subcategory(&two, &BTreeSet::new());
        assert!(empty.objects().is_empty());
        let just_x: BTreeSet<_> = [ObjId::new("x")].into();
        let (x_only, _) = full_subcategory(&two, &just_x);
        assert!(fincats_isomorphic(&x_only, &seeds::terminal()).is_some());
    }

    #[test]
    fn discrete_objects_cases() {
        let two = seeds::walking_arrow();
        let (d, incl) = discrete_objects(&two);
        assert!(d.is_discrete());
        assert!(fincats_isomorphic(&d, &seeds::discrete_two()).is_some());
        assert_eq!(incl.on_object(&ObjId::new("x")), &ObjId::new("x"));

        let d2 = seeds::discrete_two();
        let (dd, _) = discrete_objects(&d2);
        assert_eq!(&dd, &d2);

        // Objects of a coproduct = coproduct of the objects, on the nose.
        let (sum, _, _) = coproduct_cat(&two, &d2);
        let (sum0, _) = discrete_objects(&sum);
        let (two0, _) = discrete_objects(&two);
        let (d20, _) = discrete_objects(&d2);
        let (sum_of_discretes, _, _) = coproduct_cat(&two0, &d20);
        assert_eq!(sum0, sum_of_discretes);
    }

    #[test]
    fn iso_search_rejects_different_shapes() {
        // Same object and morphism counts, different endpoint structure.
        let arrow = seeds::walking_arrow();
        let idem = FinCat::new(
            vec![ObjId::new("a"), ObjId::new("b")],
            vec![
                MorRec::new("1a", "a", "a"),
                MorRec::new("1b", "b", "b"),
                MorRec::new("e", "a", "a"),
            ],
            [("a", "1a"), ("b", "1b")].map(|(o, m)| (ObjId::new(o), MorId::new(m))).into(),
            [
                ("1a", "1a", "1a"),
                ("1b", "1b", "1b"),
                ("e", "1a", "e"),
                ("1a", "e", "e"),
                ("e", "e", "e"),
            ]
            .map(|(g, f, gf)| ((MorId::new(g), MorId::new(f)), MorId::new(gf)))
            .into(),
        )
        .unwrap();
        assert!(fincats_isomorphic(&arrow, &idem).is_none());
        // A renamed copy is found, name-independently.
        let renamed = seeds::poset_from_pairs(
            &["p".to_owned(), "q".to_owned()],
            &[("p".to_owned(), "q".to_owned())],
        );
        assert!(fincats_isomorphic(&arrow, &renamed).is_some());
    }

    #[test]
    fn opposite_involution() {
        let c = seeds::chain3();
        assert_eq!(c.opposite().opposite(), c);
        assert_eq!(c.opposite().src(&MorId::new("le_o0_o1")), &ObjId::new("o1"));
    }

    #[test]
    fn constructions_validate_for_all_seeds() {
        let family = seeds::standard_family();
        for a in &family {
            for b in &family {
                // FinCat::new inside each builder re-checks all laws.
                let _ = product_cat(a, b);
                let _ = coproduct_cat(a, b);
            }
            let _ = discrete_objects(a);
            let _ = a.opposite();
        }
    }
}
