//! The bundled seed family of small categories used by the oracles.
//!
//! Enumeration sweeps quantify over these; they are chosen to cover the
//! degenerate cases (empty, terminal, discrete), the smallest non-discrete
//! poset shapes, and one non-thin category with a parallel pair, plus the
//! feasibility categories used by the co-design fixtures.

use std::collections::BTreeMap;

use crate::fincat::{FinCat, MorId, MorRec, ObjId};
use crate::fixtures;

/// The empty category `0`.
pub fn initial() -> FinCat {
    FinCat::new(Vec::new(), Vec::new(), BTreeMap::new(), BTreeMap::new())
        .expect("empty category is valid")
}

/// The one-object, one-morphism category `1`.
pub fn terminal() -> FinCat {
    FinCat::new(
        vec![ObjId::new("*")],
        vec![MorRec::new("1*", "*", "*")],
        [(ObjId::new("*"), MorId::new("1*"))].into(),
        [((MorId::new("1*"), MorId::new("1*")), MorId::new("1*"))].into(),
    )
    .expect("terminal category is valid")
}

/// The two-object discrete category.
pub fn discrete_two() -> FinCat {
    discrete(&["x", "y"])
}

/// The discrete category on the given object names.
pub fn discrete(names: &[&str]) -> FinCat {
    let objects: Vec<ObjId> = names.iter().map(|n| ObjId::new(*n)).collect();
    let morphisms: Vec<MorRec> =
        names.iter().map(|n| MorRec::new(format!("1{n}"), *n, *n)).collect();
    let identities =
        names.iter().map(|n| (ObjId::new(*n), MorId::new(format!("1{n}")))).collect();
    let compose = morphisms
        .iter()
        .map(|m| ((m.name.clone(), m.name.clone()), m.name.clone()))
        .collect();
    FinCat::new(objects, morphisms, identities, compose).expect("discrete category is valid")
}

/// The walking arrow: objects `x`, `y` and one morphism `u : x -> y`.
pub fn walking_arrow() -> FinCat {
    let objects = vec![ObjId::new("x"), ObjId::new("y")];
    let morphisms = vec![
        MorRec::new("1x", "x", "x"),
        MorRec::new("1y", "y", "y"),
        MorRec::new("u", "x", "y"),
    ];
    let identities = [("x", "1x"), ("y", "1y")]
        .map(|(o, m)| (ObjId::new(o), MorId::new(m)))
        .into();
    let mut compose = BTreeMap::new();
    for (g, f, gf) in [
        ("1x", "1x", "1x"),
        ("1y", "1y", "1y"),
        ("u", "1x", "u"),
        ("1y", "u", "u"),
    ] {
        compose.insert((MorId::new(g), MorId::new(f)), MorId::new(gf));
    }
    FinCat::new(objects, morphisms, identities, compose).expect("walking arrow is valid")
}

/// A linear poset `o0 < o1 < ... < o(n-1)` as a category.
///
/// Non-identity morphisms are named `le{i}{j}`.
pub fn chain(n: usize) -> FinCat {
    poset_from_pairs(
        &(0..n).map(|i| format!("o{i}")).collect::<Vec<_>>(),
        &(0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (format!("o{i}"), format!("o{j}")))
            .collect::<Vec<_>>(),
    )
}

/// The three-object chain `o0 < o1 < o2`.
pub fn chain3() -> FinCat {
    chain(3)
}

/// The commutative square poset: `00 < 01, 10 < 11`.
pub fn square_poset() -> FinCat {
    poset_from_pairs(
        &["00", "01", "10", "11"].map(str::to_owned),
        &[
            ("00", "01"),
            ("00", "10"),
            ("00", "11"),
            ("01", "11"),
            ("10", "11"),
        ]
        .map(|(a, b)| (a.to_owned(), b.to_owned())),
    )
}

/// A non-poset category: a parallel pair `u, v : x -> y`.
pub fn parallel_pair() -> FinCat {
    let objects = vec![ObjId::new("x"), ObjId::new("y")];
    let morphisms = vec![
        MorRec::new("1x", "x", "x"),
        MorRec::new("1y", "y", "y"),
        MorRec::new("u", "x", "y"),
        MorRec::new("v", "x", "y"),
    ];
    let identities = [("x", "1x"), ("y", "1y")]
        .map(|(o, m)| (ObjId::new(o), MorId::new(m)))
        .into();
    let mut compose = BTreeMap::new();
    for (g, f, gf) in [
        ("1x", "1x", "1x"),
        ("1y", "1y", "1y"),
        ("u", "1x", "u"),
        ("1y", "u", "u"),
        ("v", "1x", "v"),
        ("1y", "v", "v"),
    ] {
        compose.insert((MorId::new(g), MorId::new(f)), MorId::new(gf));
    }
    FinCat::new(objects, morphisms, identities, compose).expect("parallel pair is valid")
}

/// A two-object category with three parallel arrows `u, v, w : x -> y`.
///
/// Not part of the sweep family; it serves as an extra cancellation apex.
/// A lens that merges the two arrows of [`parallel_pair`] admits no
/// distinguishing pair from the sweep family itself (every lens out of the
/// pair pins both arrows), but with a third parallel arrow one can fix the
/// chosen lift's preimage and still permute the rest.
pub fn parallel_triple() -> FinCat {
    let objects = vec![ObjId::new("x"), ObjId::new("y")];
    let morphisms = vec![
        MorRec::new("1x", "x", "x"),
        MorRec::new("1y", "y", "y"),
        MorRec::new("u", "x", "y"),
        MorRec::new("v", "x", "y"),
        MorRec::new("w", "x", "y"),
    ];
    let identities = [("x", "1x"), ("y", "1y")]
        .map(|(o, m)| (ObjId::new(o), MorId::new(m)))
        .into();
    let mut compose = BTreeMap::new();
    compose.insert((MorId::new("1x"), MorId::new("1x")), MorId::new("1x"));
    compose.insert((MorId::new("1y"), MorId::new("1y")), MorId::new("1y"));
    for arrow in ["u", "v", "w"] {
        compose.insert((MorId::new(arrow), MorId::new("1x")), MorId::new(arrow));
        compose.insert((MorId::new("1y"), MorId::new(arrow)), MorId::new(arrow));
    }
    FinCat::new(objects, morphisms, identities, compose).expect("parallel triple is valid")
}

/// A one-object monoid with `n` non-identity actions where composition
/// keeps the later action. The three-action instance plays the same
/// distinguishing role for one-object categories as [`parallel_triple`]
/// does for parallel arrows.
pub fn last_wins_monoid(n: usize) -> FinCat {
    let obj = ObjId::new("*");
    let mut morphisms = vec![MorRec::new("1", "*", "*")];
    for i in 0..n {
        morphisms.push(MorRec::new(format!("p{i}"), "*", "*"));
    }
    let mut compose = BTreeMap::new();
    for f in &morphisms {
        for g in &morphisms {
            let result = if g.name.as_str() == "1" { f.name.clone() } else { g.name.clone() };
            compose.insert((g.name.clone(), f.name.clone()), result);
        }
    }
    FinCat::new(
        vec![obj.clone()],
        morphisms,
        [(obj, MorId::new("1"))].into(),
        compose,
    )
    .expect("last-wins monoid is valid")
}

/// The two-element poset `false -> true`.
pub fn bool_poset() -> FinCat {
    poset_from_pairs(
        &["false", "true"].map(str::to_owned),
        &[("false".to_owned(), "true".to_owned())],
    )
}

/// Build a thin category from a strict order relation given as pairs
/// `(below, above)`. The relation must already be transitively closed.
pub fn poset_from_pairs(names: &[String], lt: &[(String, String)]) -> FinCat {
    let objects: Vec<ObjId> = names.iter().map(ObjId::from).collect();
    let mut morphisms: Vec<MorRec> =
        names.iter().map(|n| MorRec::new(format!("1{n}"), n.clone(), n.clone())).collect();
    let arrow_name = |a: &str, b: &str| format!("le_{a}_{b}");
    for (a, b) in lt {
        morphisms.push(MorRec::new(arrow_name(a, b), a.clone(), b.clone()));
    }
    let identities: BTreeMap<ObjId, MorId> =
        names.iter().map(|n| (ObjId::from(n), MorId::new(format!("1{n}")))).collect();

    // In a thin category the composite is the unique arrow between the
    // composable endpoints.
    let unique = |a: &ObjId, b: &ObjId| -> MorId {
        if a == b {
            identities[a].clone()
        } else {
            MorId::new(arrow_name(a.as_str(), b.as_str()))
        }
    };
    let mut compose = BTreeMap::new();
    for f in &morphisms {
        for g in &morphisms {
            if f.tgt == g.src {
                compose.insert((g.name.clone(), f.name.clone()), unique(&f.src, &g.tgt));
            }
        }
    }
    FinCat::new(objects, morphisms, identities, compose)
        .expect("transitively closed order data yields a valid thin category")
}

/// The full seed family shipped with the crate, in a fixed order:
/// `0`, `1`, the two-object discrete category, the walking arrow, the
/// commutative square poset, a 3-chain, a parallel pair, and the co-design
/// feasibility categories.
pub fn standard_family() -> Vec<FinCat> {
    vec![
        initial(),
        terminal(),
        discrete_two(),
        walking_arrow(),
        square_poset(),
        chain3(),
        parallel_pair(),
        fixtures::codesign_domain(),
        bool_poset(),
    ]
}

/// The members of the seed family small enough for full enumeration sweeps.
pub fn sweep_family(bounds: &crate::oracle::Bounds) -> Vec<FinCat> {
    standard_family().into_iter().filter(|c| bounds.admits(c)).collect()
}

/// The apex family used by the cancellation and universal-property
/// oracles: the seed family plus the two three-action distinguishers,
/// filtered by the bounds. The extra apexes are deliberately not swept as
/// lens sources or targets, so the family stays closed under its own
/// needs.
pub fn test_apexes(bounds: &crate::oracle::Bounds) -> Vec<FinCat> {
    let mut family = sweep_family(bounds);
    for extra in [parallel_triple(), last_wins_monoid(3)] {
        if bounds.admits(&extra) {
            family.push(extra);
        }
    }
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain3_counts() {
        let c = chain3();
        assert_eq!(c.objects().len(), 3);
        assert_eq!(c.morphisms().len(), 6);
        assert!(c.is_thin());
    }

    #[test]
    fn square_poset_counts() {
        let s = square_poset();
        assert_eq!(s.objects().len(), 4);
        assert_eq!(s.morphisms().len(), 9);
    }

    #[test]
    fn family_members_are_distinct() {
        let family = standard_family();
        for (i, a) in family.iter().enumerate() {
            for b in family.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }
}
