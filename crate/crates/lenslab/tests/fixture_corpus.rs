//! The shipped document corpus under `fixtures/v1` is generated from the
//! in-code builders. `corpus_matches_builders` pins the files byte-for-byte
//! to the builders; run the ignored `regenerate_fixture_corpus` test to
//! rewrite them after an intentional change.

use std::path::PathBuf;

use lenslab::fincat::Functor;
use lenslab::io::{parse_document, serialize_document, Document};
use lenslab::{fixtures, seeds};

fn corpus() -> Vec<(&'static str, Document)> {
    let stack = fixtures::build_state_machine_example();
    vec![
        ("categories/zero.json", Document::Category(seeds::initial())),
        ("categories/one.json", Document::Category(seeds::terminal())),
        ("categories/d2.json", Document::Category(seeds::discrete_two())),
        ("categories/arrow2.json", Document::Category(seeds::walking_arrow())),
        ("categories/square_poset.json", Document::Category(seeds::square_poset())),
        ("categories/chain3.json", Document::Category(seeds::chain3())),
        ("categories/parallel_pair.json", Document::Category(seeds::parallel_pair())),
        ("categories/bool.json", Document::Category(seeds::bool_poset())),
        ("categories/parallel_triple.json", Document::Category(seeds::parallel_triple())),
        ("categories/codesign_domain.json", Document::Category(fixtures::codesign_domain())),
        ("categories/keyboard.json", Document::Category(stack.keyboard.clone())),
        ("categories/mode.json", Document::Category(stack.mode.clone())),
        ("categories/state.json", Document::Category(stack.state.clone())),
        (
            "functors/arrow2_identity.json",
            Document::Functor(Functor::identity(&seeds::walking_arrow())),
        ),
        (
            "lenses/codesign_opinion.json",
            Document::Lens(fixtures::build_codesign_example().opinion),
        ),
        (
            "lenses/codesign_alternative.json",
            Document::Lens(fixtures::alternative_strategy().opinion),
        ),
        ("lenses/bios_os.json", Document::Lens(fixtures::bios_os_lens())),
        ("lenses/inj_arrow2.json", {
            let (_, inj, _) =
                lenslab::fincat::coproduct_cat(&seeds::walking_arrow(), &seeds::terminal());
            Document::Lens(lenslab::lens::lens_from_dof(&inj).unwrap())
        }),
        ("lenses/state_lens.json", Document::Lens(stack.state_lens.clone())),
        ("lenses/mode_lens.json", Document::Lens(stack.mode_lens.clone())),
        (
            "diagrams/extensivity_true.json",
            Document::Diagram(fixtures::extensivity_demo().to_bundle()),
        ),
        (
            "diagrams/extensivity_perturbed.json",
            Document::Diagram(fixtures::extensivity_demo_perturbed().to_bundle()),
        ),
    ]
}

fn corpus_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/v1")
}

#[test]
#[ignore = "rewrites the shipped corpus"]
fn regenerate_fixture_corpus() {
    let root = corpus_root();
    for (rel, doc) in corpus() {
        let path = root.join(rel);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, serialize_document(&doc)).unwrap();
    }
}

#[test]
fn corpus_matches_builders() {
    let root = corpus_root();
    for (rel, doc) in corpus() {
        let path = root.join(rel);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing fixture {rel}: {e}"));
        assert_eq!(text, serialize_document(&doc), "fixture {rel} is out of date");
    }
}

#[test]
fn corpus_roundtrips_exactly() {
    let root = corpus_root();
    for (rel, doc) in corpus() {
        let path = root.join(rel);
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_document(&text, path.parent()).unwrap();
        assert_eq!(parsed, doc, "fixture {rel} does not parse back to its builder");
        assert_eq!(serialize_document(&parsed), text, "fixture {rel} reserializes differently");
    }
}
