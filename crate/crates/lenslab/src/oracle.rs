//! Brute-force enumeration of functors and lenses, and universal-property
//! certification by exhaustive search.
//!
//! Everything here is bounded by a [`Bounds`] configuration (defaults: at
//! most 3 objects and 8 morphisms for full sweeps, 4 objects and 12
//! morphisms for targeted checks). Enumeration order is lexicographic in
//! (object map, morphism map, lift table) over the categories' stored
//! orders, so candidate streams, counts, and reported witnesses are
//! deterministic across runs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::constructions::{EqualiserResult, ImportedCone};
use crate::fincat::{FinCat, Functor, MorId, ObjId};
use crate::lens::Lens;

/// Size limits for enumeration sweeps. Bounds are configuration, not code:
/// the library never hard-codes a sweep size elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_objects: 3, max_morphisms: 8 }
    }
}

impl Bounds {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        Bounds { max_objects, max_morphisms }
    }

    /// Looser limits for targeted checks on constructed categories such as
    /// small products and pullbacks.
    pub fn targeted() -> Self {
        Bounds { max_objects: 4, max_morphisms: 12 }
    }

    pub fn admits(&self, c: &FinCat) -> bool {
        c.objects().len() <= self.max_objects && c.morphisms().len() <= self.max_morphisms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("category with {objects} objects / {morphisms} morphisms exceeds the bounds ({max_objects} objects, {max_morphisms} morphisms)")]
    BoundExceeded {
        objects: usize,
        morphisms: usize,
        max_objects: usize,
        max_morphisms: usize,
    },
}

fn check_bounds(c: &FinCat, bounds: &Bounds) -> Result<(), OracleError> {
    if bounds.admits(c) {
        Ok(())
    } else {
        Err(OracleError::BoundExceeded {
            objects: c.objects().len(),
            morphisms: c.morphisms().len(),
            max_objects: bounds.max_objects,
            max_morphisms: bounds.max_morphisms,
        })
    }
}

/// Every functor `A -> B`, each exactly once, in lexicographic order.
pub fn enumerate_functors(
    a: &FinCat,
    b: &FinCat,
    bounds: &Bounds,
) -> Result<Vec<Functor>, OracleError> {
    check_bounds(a, bounds)?;
    check_bounds(b, bounds)?;

    let mut out = Vec::new();
    let mut object_map = BTreeMap::new();
    object_maps(a, b, 0, &mut object_map, &mut |object_map| {
        let mut morphism_map: BTreeMap<MorId, MorId> = BTreeMap::new();
        morphism_maps(a, b, object_map, 0, &mut morphism_map, &mut |mm| {
            if let Ok(f) =
                Functor::new(a.clone(), b.clone(), object_map.clone(), mm.clone())
            {
                out.push(f);
            }
        });
    });
    Ok(out)
}

fn object_maps(
    a: &FinCat,
    b: &FinCat,
    idx: usize,
    acc: &mut BTreeMap<ObjId, ObjId>,
    emit: &mut impl FnMut(&BTreeMap<ObjId, ObjId>),
) {
    if idx == a.objects().len() {
        emit(acc);
        return;
    }
    let x = a.objects()[idx].clone();
    for y in b.objects() {
        acc.insert(x.clone(), y.clone());
        object_maps(a, b, idx + 1, acc, emit);
    }
    acc.remove(&x);
}

fn morphism_maps(
    a: &FinCat,
    b: &FinCat,
    object_map: &BTreeMap<ObjId, ObjId>,
    idx: usize,
    acc: &mut BTreeMap<MorId, MorId>,
    emit: &mut impl FnMut(&BTreeMap<MorId, MorId>),
) {
    if idx == a.morphisms().len() {
        emit(acc);
        return;
    }
    let m = &a.morphisms()[idx];
    if a.is_identity(&m.name) {
        // Identities are forced.
        let img = b.identity_of(&object_map[&m.src]).clone();
        acc.insert(m.name.clone(), img);
        morphism_maps(a, b, object_map, idx + 1, acc, emit);
        acc.remove(&m.name);
        return;
    }
    let candidates: Vec<MorId> = b
        .hom(&object_map[&m.src], &object_map[&m.tgt])
        .iter()
        .map(|r| r.name.clone())
        .collect();
    for cand in candidates {
        acc.insert(m.name.clone(), cand);
        morphism_maps(a, b, object_map, idx + 1, acc, emit);
    }
    acc.remove(&m.name);
}

/// Every lens `A ⇌ B`, each exactly once, in lexicographic order: for each
/// functor, every lifting table satisfying axiom 1 is generated and
/// filtered by axioms 2 and 3.
pub fn enumerate_lenses(a: &FinCat, b: &FinCat, bounds: &Bounds) -> Result<Vec<Lens>, OracleError> {
    let functors = enumerate_functors(a, b, bounds)?;
    let mut out = Vec::new();
    for f in functors {
        lift_tables(&f, &mut out);
    }
    Ok(out)
}

fn lift_tables(f: &Functor, out: &mut Vec<Lens>) {
    let (a, b) = (f.source(), f.target());
    // Lift domain in lexicographic (object, codomain morphism) order, with
    // the candidate lifts for each slot.
    let mut slots: Vec<((ObjId, MorId), Vec<MorId>)> = Vec::new();
    for x in a.objects() {
        let fx = f.on_object(x);
        for u in b.morphisms_from(fx) {
            let candidates: Vec<MorId> = if b.is_identity(&u.name) {
                vec![a.identity_of(x).clone()]
            } else {
                a.morphisms_from(x)
                    .filter(|w| f.on_morphism(&w.name) == &u.name)
                    .map(|w| w.name.clone())
                    .collect()
            };
            if candidates.is_empty() {
                return; // no lawful lens on this functor
            }
            slots.push(((x.clone(), u.name.clone()), candidates));
        }
    }
    let mut table = BTreeMap::new();
    fill_slots(f, &slots, 0, &mut table, out);
}

fn fill_slots(
    f: &Functor,
    slots: &[((ObjId, MorId), Vec<MorId>)],
    idx: usize,
    table: &mut BTreeMap<(ObjId, MorId), MorId>,
    out: &mut Vec<Lens>,
) {
    if idx == slots.len() {
        if let Ok(lens) = Lens::new(f.clone(), table.clone()) {
            out.push(lens);
        }
        return;
    }
    let (key, candidates) = &slots[idx];
    for cand in candidates {
        table.insert(key.clone(), cand.clone());
        fill_slots(f, slots, idx + 1, table, out);
    }
    table.remove(key);
}

/// What a report certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyTag {
    ProductUp,
    PullbackUp,
    EqualiserUp,
    CoproductUp,
    MonoCancel,
    EpiCancel,
    Uniqueness,
    Existence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

/// The violating (or mediating) lenses backing a verdict, with a short
/// description of where they were found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub context: String,
    pub lenses: Vec<Lens>,
}

/// Result of a brute-force universal-property or cancellation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub property: PropertyTag,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Number of candidates examined.
    pub search_size: u64,
}

impl OracleReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// All mediators `Z ⇌ apex` commuting with both legs of a binary cone over
/// the given test legs `(f : Z ⇌ A, g : Z ⇌ B)`.
pub fn product_mediators(
    cone: &ImportedCone,
    f: &Lens,
    g: &Lens,
    bounds: &Bounds,
) -> Result<Vec<Lens>, OracleError> {
    let candidates = enumerate_lenses(f.source(), &cone.apex, bounds)?;
    Ok(candidates
        .into_iter()
        .filter(|m| {
            m.then(&cone.legs[0]).ok().as_ref() == Some(f)
                && m.then(&cone.legs[1]).ok().as_ref() == Some(g)
        })
        .collect())
}

/// Check the product universal property of a binary cone against every pair
/// of lenses out of every test apex: each must admit exactly one mediator.
pub fn check_universal_product(
    cone: &ImportedCone,
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let a = cone.legs[0].target();
    let b = cone.legs[1].target();
    let mut search = 0u64;
    for z in apexes {
        let into_a = enumerate_lenses(z, a, bounds)?;
        let into_b = enumerate_lenses(z, b, bounds)?;
        let mediators = enumerate_lenses(z, &cone.apex, bounds)?;
        search += (into_a.len() + into_b.len() + mediators.len()) as u64;
        let composed: Vec<(Lens, Lens)> = mediators
            .iter()
            .map(|m| (m.then(&cone.legs[0]).unwrap(), m.then(&cone.legs[1]).unwrap()))
            .collect();
        for f in &into_a {
            for g in &into_b {
                let matching: Vec<&Lens> = mediators
                    .iter()
                    .zip(&composed)
                    .filter(|(_, (c0, c1))| c0 == f && c1 == g)
                    .map(|(m, _)| m)
                    .collect();
                search += 1;
                if matching.len() != 1 {
                    let mut lenses = vec![f.clone(), g.clone()];
                    lenses.extend(matching.into_iter().cloned());
                    return Ok(OracleReport {
                        property: PropertyTag::ProductUp,
                        verdict: Verdict::Fails,
                        witness: Some(Witness {
                            context: format!(
                                "cone from apex with objects {:?} has {} mediators",
                                z.objects().len(),
                                lenses.len() - 2
                            ),
                            lenses,
                        }),
                        search_size: search,
                    });
                }
            }
        }
    }
    Ok(OracleReport {
        property: PropertyTag::ProductUp,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Check that a claimed pullback square is one: for every commuting cone
/// out of every test apex there is exactly one mediator into the claimed
/// limit.
///
/// `cospan = (f : A ⇌ B, g : C ⇌ B)`; `cone = (p : W ⇌ A, q : W ⇌ C)` with
/// `f ∘ p = g ∘ q`.
pub fn check_pullback_square(
    cospan: (&Lens, &Lens),
    cone: (&Lens, &Lens),
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let (f, g) = cospan;
    let (p, q) = cone;
    assert_eq!(p.source(), q.source(), "cone legs share an apex");
    let w = p.source();
    let mut search = 0u64;
    for z in apexes {
        let into_a = enumerate_lenses(z, f.source(), bounds)?;
        let into_c = enumerate_lenses(z, g.source(), bounds)?;
        let mediators = enumerate_lenses(z, w, bounds)?;
        search += (into_a.len() + into_c.len() + mediators.len()) as u64;
        let composed: Vec<(Lens, Lens)> = mediators
            .iter()
            .map(|m| (m.then(p).unwrap(), m.then(q).unwrap()))
            .collect();
        for zp in &into_a {
            for zq in &into_c {
                if zp.then(f).unwrap() != zq.then(g).unwrap() {
                    continue;
                }
                search += 1;
                let matching: Vec<&Lens> = mediators
                    .iter()
                    .zip(&composed)
                    .filter(|(_, (c0, c1))| c0 == zp && c1 == zq)
                    .map(|(m, _)| m)
                    .collect();
                if matching.len() != 1 {
                    let mut lenses = vec![zp.clone(), zq.clone()];
                    let n = matching.len();
                    lenses.extend(matching.into_iter().cloned());
                    return Ok(OracleReport {
                        property: PropertyTag::PullbackUp,
                        verdict: Verdict::Fails,
                        witness: Some(Witness {
                            context: format!("commuting cone admits {n} mediators"),
                            lenses,
                        }),
                        search_size: search,
                    });
                }
            }
        }
    }
    Ok(OracleReport {
        property: PropertyTag::PullbackUp,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Check the pullback universal property of an imported cone over its
/// cospan.
pub fn check_universal_pullback(
    cone: &ImportedCone,
    cospan: (&Lens, &Lens),
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    check_pullback_square(cospan, (&cone.legs[0], &cone.legs[1]), apexes, bounds)
}

/// Check the equaliser universal property: every lens cone over the pair
/// factors through the inclusion exactly once.
pub fn check_universal_equaliser(
    result: &EqualiserResult,
    pair: (&Lens, &Lens),
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let (f, g) = pair;
    let mut search = 0u64;
    for z in apexes {
        let cones = enumerate_lenses(z, f.source(), bounds)?;
        search += cones.len() as u64;
        let factorings = enumerate_lenses(z, &result.object, bounds)?;
        search += factorings.len() as u64;
        for cone in &cones {
            if cone.then(f).unwrap() != cone.then(g).unwrap() {
                continue;
            }
            let matching: Vec<&Lens> = factorings
                .iter()
                .filter(|m| m.then(&result.inclusion).ok().as_ref() == Some(cone))
                .collect();
            if matching.len() != 1 {
                let n = matching.len();
                let mut lenses = vec![cone.clone()];
                lenses.extend(matching.into_iter().cloned());
                return Ok(OracleReport {
                    property: PropertyTag::EqualiserUp,
                    verdict: Verdict::Fails,
                    witness: Some(Witness {
                        context: format!("cone admits {n} factorisations through the inclusion"),
                        lenses,
                    }),
                    search_size: search,
                });
            }
        }
    }
    Ok(OracleReport {
        property: PropertyTag::EqualiserUp,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Check the coproduct universal property of a cospan `(X ⇌ Z, Y ⇌ Z)`:
/// every pair of lenses out of `X` and `Y` into a test apex extends to a
/// unique lens out of `Z`.
pub fn check_universal_coproduct(
    cospan: (&Lens, &Lens),
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let (tl, tr) = cospan;
    assert_eq!(tl.target(), tr.target(), "cospan legs share a codomain");
    let z = tl.target();
    let mut search = 0u64;
    for w in apexes {
        let from_x = enumerate_lenses(tl.source(), w, bounds)?;
        let from_y = enumerate_lenses(tr.source(), w, bounds)?;
        let mediators = enumerate_lenses(z, w, bounds)?;
        search += (from_x.len() + from_y.len() + mediators.len()) as u64;
        let composed: Vec<(Lens, Lens)> = mediators
            .iter()
            .map(|m| (tl.then(m).unwrap(), tr.then(m).unwrap()))
            .collect();
        for xw in &from_x {
            for yw in &from_y {
                search += 1;
                let matching: Vec<&Lens> = mediators
                    .iter()
                    .zip(&composed)
                    .filter(|(_, (c0, c1))| c0 == xw && c1 == yw)
                    .map(|(m, _)| m)
                    .collect();
                if matching.len() != 1 {
                    let n = matching.len();
                    let mut lenses = vec![xw.clone(), yw.clone()];
                    lenses.extend(matching.into_iter().cloned());
                    return Ok(OracleReport {
                        property: PropertyTag::CoproductUp,
                        verdict: Verdict::Fails,
                        witness: Some(Witness {
                            context: format!("cocone admits {n} mediators"),
                            lenses,
                        }),
                        search_size: search,
                    });
                }
            }
        }
    }
    Ok(OracleReport {
        property: PropertyTag::CoproductUp,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Left-cancellation test over every enumerated lens out of every test
/// apex. The verdict must agree with the structural predicate; the caller
/// asserts that.
pub fn brute_force_mono(
    l: &Lens,
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let mut search = 0u64;
    for z in apexes {
        let candidates = enumerate_lenses(z, l.source(), bounds)?;
        search += candidates.len() as u64;
        let mut seen: BTreeMap<Lens, usize> = BTreeMap::new();
        for (i, cand) in candidates.iter().enumerate() {
            let composite = cand.then(l).unwrap();
            if let Some(&j) = seen.get(&composite) {
                return Ok(OracleReport {
                    property: PropertyTag::MonoCancel,
                    verdict: Verdict::Fails,
                    witness: Some(Witness {
                        context: "distinct lenses with equal composites".into(),
                        lenses: vec![candidates[j].clone(), cand.clone()],
                    }),
                    search_size: search,
                });
            }
            seen.insert(composite, i);
        }
    }
    Ok(OracleReport {
        property: PropertyTag::MonoCancel,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Right-cancellation test over every enumerated lens into every test
/// apex.
pub fn brute_force_epi(
    l: &Lens,
    apexes: &[FinCat],
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let mut search = 0u64;
    for z in apexes {
        let candidates = enumerate_lenses(l.target(), z, bounds)?;
        search += candidates.len() as u64;
        let mut seen: BTreeMap<Lens, usize> = BTreeMap::new();
        for (i, cand) in candidates.iter().enumerate() {
            let composite = l.then(cand).unwrap();
            if let Some(&j) = seen.get(&composite) {
                return Ok(OracleReport {
                    property: PropertyTag::EpiCancel,
                    verdict: Verdict::Fails,
                    witness: Some(Witness {
                        context: "distinct lenses with equal composites".into(),
                        lenses: vec![candidates[j].clone(), cand.clone()],
                    }),
                    search_size: search,
                });
            }
            seen.insert(composite, i);
        }
    }
    Ok(OracleReport {
        property: PropertyTag::EpiCancel,
        verdict: Verdict::Holds,
        witness: None,
        search_size: search,
    })
}

/// Certify by enumeration that a filled diagonal is the unique lens making
/// both fill triangles commute.
pub fn certify_unique_diagonal(
    e: &Lens,
    m: &Lens,
    f: &Lens,
    g: &Lens,
    diagonal: &Lens,
    bounds: &Bounds,
) -> Result<OracleReport, OracleError> {
    let candidates = enumerate_lenses(e.target(), f.target(), bounds)?;
    let search = candidates.len() as u64;
    let matching: Vec<&Lens> = candidates
        .iter()
        .filter(|h| {
            e.then(h).ok().as_ref() == Some(f) && h.then(m).ok().as_ref() == Some(g)
        })
        .collect();
    let unique = matching.len() == 1 && matching[0] == diagonal;
    Ok(OracleReport {
        property: PropertyTag::Uniqueness,
        verdict: if unique { Verdict::Holds } else { Verdict::Fails },
        witness: if unique {
            None
        } else {
            Some(Witness {
                context: format!("{} diagonals satisfy the fill equations", matching.len()),
                lenses: matching.into_iter().cloned().collect(),
            })
        },
        search_size: search,
    })
}
