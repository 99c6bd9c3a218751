//! Property tests over randomly generated small posets: serialization is
//! bit-exact, cosieve inclusions are monomorphisms, terminal lenses are
//! unique, and factorisation is exact, on inputs the unit suites never
//! wrote down by hand.

use proptest::prelude::*;

use lenslab::constructions::{factorise_lens, terminal_lens};
use lenslab::fincat::{full_subcategory, FinCat, ObjId};
use lenslab::io::{parse_document, serialize_document, Document};
use lenslab::lens::{is_epi_lens, is_mono_lens, lens_from_dof, Lens};
use lenslab::oracle::{enumerate_lenses, Bounds};
use lenslab::seeds;

/// A random poset on up to four points: a random strict upper-triangular
/// relation, transitively closed.
fn arb_poset() -> impl Strategy<Value = FinCat> {
    (1usize..=4).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut lt = vec![vec![false; n]; n];
            let mut slot = bits.into_iter();
            for (i, row) in lt.iter_mut().enumerate() {
                for flag in row.iter_mut().skip(i + 1) {
                    *flag = slot.next().unwrap();
                }
            }
            // Transitive closure (indices are already topologically sorted).
            for mid in 0..n {
                for lo in 0..mid {
                    for hi in (mid + 1)..n {
                        if lt[lo][mid] && lt[mid][hi] {
                            lt[lo][hi] = true;
                        }
                    }
                }
            }
            let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
            let pairs: Vec<(String, String)> = (0..n)
                .flat_map(|i| {
                    let names = names.clone();
                    let row = lt[i].clone();
                    (0..n).filter(move |&j| row[j]).map(move |j| (names[i].clone(), names[j].clone()))
                })
                .collect();
            seeds::poset_from_pairs(&names, &pairs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn category_documents_roundtrip(cat in arb_poset()) {
        let doc = Document::Category(cat);
        let text = serialize_document(&doc);
        let back = parse_document(&text, None).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_document(&back), text);
    }

    #[test]
    fn outgoing_closed_inclusions_are_monos(cat in arb_poset(), mask in any::<u8>()) {
        // Close a random subset under outgoing morphisms, then include.
        let mut subset: std::collections::BTreeSet<ObjId> = cat
            .objects()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, o)| o.clone())
            .collect();
        loop {
            let grow: Vec<ObjId> = subset
                .iter()
                .flat_map(|o| cat.morphisms_from(o).map(|m| m.tgt.clone()))
                .filter(|t| !subset.contains(t))
                .collect();
            if grow.is_empty() {
                break;
            }
            subset.extend(grow);
        }
        let (_, incl) = full_subcategory(&cat, &subset);
        let lens = lens_from_dof(&incl).unwrap();
        prop_assert!(is_mono_lens(&lens));
        let doc = Document::Lens(lens);
        let text = serialize_document(&doc);
        prop_assert_eq!(parse_document(&text, None).unwrap(), doc);
    }

    #[test]
    fn terminal_lens_is_unique(cat in arb_poset()) {
        let bounds = Bounds::targeted();
        let found = enumerate_lenses(&cat, &seeds::terminal(), &bounds).unwrap();
        prop_assert_eq!(found.len(), 1);
        prop_assert_eq!(&found[0], &terminal_lens(&cat));
    }

    #[test]
    fn factorisation_is_exact_on_enumerated_lenses(a in arb_poset(), b in arb_poset()) {
        let bounds = Bounds::targeted();
        for l in enumerate_lenses(&a, &b, &bounds).unwrap() {
            let fact = factorise_lens(&l);
            prop_assert_eq!(fact.epi.then(&fact.mono).unwrap(), l);
            prop_assert!(is_epi_lens(&fact.epi));
            prop_assert!(is_mono_lens(&fact.mono));
        }
    }

    #[test]
    fn composites_of_enumerated_lenses_are_lawful(a in arb_poset(), b in arb_poset()) {
        let bounds = Bounds::targeted();
        let forward = enumerate_lenses(&a, &b, &bounds).unwrap();
        let back = enumerate_lenses(&b, &a, &bounds).unwrap();
        for f in &forward {
            for g in &back {
                let composite = f.then(g).unwrap();
                prop_assert!(
                    Lens::new(composite.functor().clone(), composite.lift_table().clone()).is_ok()
                );
            }
        }
    }
}
