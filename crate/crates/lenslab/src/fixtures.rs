//! Executable example data: a monotone co-design problem and a small modal
//! text editor, plus the two-phase boot machine used by the factorisation
//! demo. These double as documentation and as fixture inputs for the
//! integration suites.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::constructions::{equaliser_lens, EqualiserResult};
use crate::fincat::{product_cat, FinCat, Functor, MorId, MorRec, ObjId};
use crate::lens::{lens_from_dof, Lens};
use crate::seeds;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("the two problems are not over the same functionality/resource posets")]
pub struct DomainMismatch;

/// A monotone feasibility judgement with a chosen repair strategy.
///
/// `opinion` is a lens from the product of the opposite functionality poset
/// with the resource poset into the two-point order `false -> true`. The
/// functor part judges which (functionality, resource) pairs are feasible;
/// the lifting operation picks, for each infeasible pair, a reachable
/// feasible pair: either lower the demanded functionality or pay for more
/// resources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoDesignProblem {
    pub functionality: FinCat,
    pub resources: FinCat,
    pub bool_cat: FinCat,
    pub opinion: Lens,
}

impl CoDesignProblem {
    /// The common source category of the opinion lens.
    pub fn domain(&self) -> &FinCat {
        self.opinion.source()
    }

    /// Objects judged feasible, in domain order.
    pub fn feasible(&self) -> Vec<ObjId> {
        self.domain()
            .objects()
            .iter()
            .filter(|o| self.opinion.functor().on_object(o).as_str() == "true")
            .cloned()
            .collect()
    }

    /// Objects judged infeasible, in domain order.
    pub fn infeasible(&self) -> Vec<ObjId> {
        self.domain()
            .objects()
            .iter()
            .filter(|o| self.opinion.functor().on_object(o).as_str() == "false")
            .cloned()
            .collect()
    }
}

/// The ride-hire functionality poset: `slow < average < fast`.
pub fn functionality_poset() -> FinCat {
    seeds::poset_from_pairs(
        &["slow", "average", "fast"].map(str::to_owned),
        &[
            ("slow", "average"),
            ("slow", "fast"),
            ("average", "fast"),
        ]
        .map(|(a, b)| (a.to_owned(), b.to_owned())),
    )
}

/// The ride-cost resource poset: `cheap < expensive`.
pub fn resource_poset() -> FinCat {
    seeds::poset_from_pairs(
        &["cheap", "expensive"].map(str::to_owned),
        &[("cheap".to_owned(), "expensive".to_owned())],
    )
}

/// The common domain of the co-design opinions: `F^op × R`.
///
/// Arrows lower the demanded functionality and raise the supplied
/// resources, so feasibility can only improve along them.
pub fn codesign_domain() -> FinCat {
    product_cat(&functionality_poset().opposite(), &resource_poset()).0
}

fn pair(f: &str, r: &str) -> ObjId {
    ObjId::new(format!("({f},{r})"))
}

/// Build an opinion lens over the standard domain from the feasible set and
/// a repair target for each infeasible pair.
fn opinion_lens(feasible: &[ObjId], strategy: &BTreeMap<ObjId, ObjId>) -> Lens {
    let domain = codesign_domain();
    let bool_cat = seeds::bool_poset();
    let truth = |o: &ObjId| -> &'static str {
        if feasible.contains(o) {
            "true"
        } else {
            "false"
        }
    };
    let object_map: BTreeMap<ObjId, ObjId> =
        domain.objects().iter().map(|o| (o.clone(), ObjId::new(truth(o)))).collect();
    let morphism_map: BTreeMap<MorId, MorId> = domain
        .morphisms()
        .iter()
        .map(|m| {
            let (s, t) = (&object_map[&m.src], &object_map[&m.tgt]);
            let img = if s == t {
                bool_cat.identity_of(s).clone()
            } else {
                bool_cat.hom(s, t)[0].name.clone()
            };
            (m.name.clone(), img)
        })
        .collect();
    let functor = Functor::new(domain.clone(), bool_cat.clone(), object_map, morphism_map)
        .expect("feasibility judgement is monotone");

    let mut lift = BTreeMap::new();
    for o in domain.objects() {
        let fo = functor.on_object(o).clone();
        lift.insert((o.clone(), bool_cat.identity_of(&fo).clone()), domain.identity_of(o).clone());
        if truth(o) == "false" {
            let target = &strategy[o];
            let repair = domain.hom(o, target);
            assert_eq!(repair.len(), 1, "repair target must be reachable");
            let to_true = bool_cat.hom(&ObjId::new("false"), &ObjId::new("true"))[0].name.clone();
            lift.insert((o.clone(), to_true), repair[0].name.clone());
        }
    }
    Lens::new(functor, lift).expect("satisfaction strategy is lawful")
}

fn codesign_with_strategy(strategy: &BTreeMap<ObjId, ObjId>) -> CoDesignProblem {
    let feasible = vec![
        pair("slow", "cheap"),
        pair("slow", "expensive"),
        pair("average", "expensive"),
        pair("fast", "expensive"),
    ];
    CoDesignProblem {
        functionality: functionality_poset(),
        resources: resource_poset(),
        bool_cat: seeds::bool_poset(),
        opinion: opinion_lens(&feasible, strategy),
    }
}

/// The standard co-design opinion: only cheap rides are slow rides, and the
/// repair strategy accepts paying more.
pub fn build_codesign_example() -> CoDesignProblem {
    let strategy = [
        (pair("average", "cheap"), pair("average", "expensive")),
        (pair("fast", "cheap"), pair("fast", "expensive")),
    ]
    .into();
    codesign_with_strategy(&strategy)
}

/// The same feasibility judgement with the other repair: sacrifice
/// performance and keep the ride cheap.
pub fn alternative_strategy() -> CoDesignProblem {
    let strategy = [
        (pair("average", "cheap"), pair("slow", "cheap")),
        (pair("fast", "cheap"), pair("slow", "cheap")),
    ]
    .into();
    codesign_with_strategy(&strategy)
}

/// Equalise two expert opinions over the same posets: the result selects
/// the pairs on which both the judgements and the repair strategies agree,
/// closed under reachability.
pub fn equalise_experts(
    p: &CoDesignProblem,
    q: &CoDesignProblem,
) -> Result<EqualiserResult, DomainMismatch> {
    if p.functionality != q.functionality || p.resources != q.resources {
        return Err(DomainMismatch);
    }
    Ok(equaliser_lens(&p.opinion, &q.opinion))
}

/// A parallel pair of lenses over the co-design domain that disagree at
/// every single object, so their equaliser is empty.
///
/// Judgements into the two-point order cannot disagree everywhere (the
/// bottom pair of the grid is forced feasible for both), so the pair lands
/// in a two-element discrete codomain instead: one expert files everything
/// under `x`, the other under `y`.
pub fn total_disagreement_pair() -> (Lens, Lens) {
    let domain = codesign_domain();
    let d2 = seeds::discrete_two();
    let constant = |target: &str| -> Lens {
        let functor = Functor::new(
            domain.clone(),
            d2.clone(),
            domain.objects().iter().map(|o| (o.clone(), ObjId::new(target))).collect(),
            domain
                .morphisms()
                .iter()
                .map(|m| (m.name.clone(), MorId::new(format!("1{target}"))))
                .collect(),
        )
        .expect("constant functor");
        // The only codomain arrow out of the image is its identity, so the
        // lift table is all identities.
        let lift = domain
            .objects()
            .iter()
            .map(|o| {
                ((o.clone(), MorId::new(format!("1{target}"))), domain.identity_of(o).clone())
            })
            .collect();
        Lens::new(functor, lift).expect("constant lens into a discrete category is lawful")
    };
    (constant("x"), constant("y"))
}

/// A modal text editor presented as a stack of lenses
/// `STATE ⇌ MODE ⇌ KEYBOARD`.
///
/// The keyboard is the finite monoid of key words acting on the editor
/// states (every word is identified with its induced state transformation,
/// which closes the presentation by construction). Modes and states are the
/// corresponding action categories, and both coordinating lenses are
/// discrete opfibrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineStack {
    pub state: FinCat,
    pub mode: FinCat,
    pub keyboard: FinCat,
    pub state_lens: Lens,
    pub mode_lens: Lens,
}

impl MachineStack {
    /// The composite `STATE ⇌ KEYBOARD`.
    pub fn composite(&self) -> Lens {
        self.state_lens.then(&self.mode_lens).expect("stack composes")
    }
}

const EDITOR_STATES: [&str; 8] = ["v0", "v1", "c0", "c1", "w0e", "w0f", "w1e", "w1f"];
const EDITOR_KEYS: [&str; 4] = ["d", "m", "v", "w"];

fn editor_mode(state: &str) -> &'static str {
    match state.as_bytes()[0] {
        b'v' => "view",
        b'c' => "ctrl",
        _ => "write",
    }
}

/// One keystroke of the editor. `d` is the command key: it always returns
/// to control mode (remembering the cursor). In view mode `m` moves the
/// cursor and letters are ignored; in control mode `v` and `w` switch modes
/// and anything else loops; in write mode letters fill the buffer and `m`
/// is ignored.
fn editor_delta(state: &str, key: &str) -> String {
    let cursor = &state[1..2];
    match (editor_mode(state), key) {
        (_, "d") => format!("c{cursor}"),
        ("view", "m") => format!("v{}", if cursor == "0" { "1" } else { "0" }),
        ("view", _) => state.to_owned(),
        ("ctrl", "v") => format!("v{cursor}"),
        ("ctrl", "w") => format!("w{cursor}e"),
        ("write", "v") | ("write", "w") => format!("w{cursor}f"),
        _ => state.to_owned(),
    }
}

/// The transformation monoid of a deterministic key action: every distinct
/// state transformation reachable by a key word, named by its shortest
/// (breadth-first) word, identity first.
type MonoidElements = Vec<(String, Vec<usize>)>;

fn action_monoid(
    states: &[&str],
    keys: &[&str],
    delta: impl Fn(&str, &str) -> String,
) -> (MonoidElements, Vec<Vec<usize>>) {
    let index: BTreeMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let gens: Vec<(String, Vec<usize>)> = keys
        .iter()
        .map(|k| {
            let map = states.iter().map(|s| index[delta(s, k).as_str()]).collect();
            (k.to_string(), map)
        })
        .collect();

    let identity: Vec<usize> = (0..states.len()).collect();
    let mut elements = vec![("1".to_owned(), identity.clone())];
    let mut seen: BTreeMap<Vec<usize>, usize> = [(identity, 0)].into();
    let mut frontier = 0;
    while frontier < elements.len() {
        let (word, map) = elements[frontier].clone();
        frontier += 1;
        for (k, kmap) in &gens {
            let next: Vec<usize> = map.iter().map(|&s| kmap[s]).collect();
            if !seen.contains_key(&next) {
                let next_word = if word == "1" { k.clone() } else { format!("{word}{k}") };
                seen.insert(next.clone(), elements.len());
                elements.push((next_word, next));
            }
        }
    }

    // Composition table by element index: entry [i][j] is "i then j".
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|(_, mi)| {
            elements
                .iter()
                .map(|(_, mj)| {
                    let composed: Vec<usize> = mi.iter().map(|&s| mj[s]).collect();
                    seen[&composed]
                })
                .collect()
        })
        .collect();
    (elements, table)
}

/// The action category of a monoid on a finite point set: one arrow
/// `word@point` per (point, element) pair.
fn action_category(
    points: &[&str],
    elements: &[(String, Vec<usize>)],
    table: &[Vec<usize>],
    act: impl Fn(usize, usize) -> usize,
) -> FinCat {
    let arrow = |p: usize, e: usize| MorId::new(format!("{}@{}", elements[e].0, points[p]));
    let objects: Vec<ObjId> = points.iter().map(|p| ObjId::new(*p)).collect();
    let mut morphisms = Vec::new();
    for (pi, _) in points.iter().enumerate() {
        for (ei, _) in elements.iter().enumerate() {
            morphisms.push(MorRec {
                name: arrow(pi, ei),
                src: objects[pi].clone(),
                tgt: objects[act(pi, ei)].clone(),
            });
        }
    }
    let identities: BTreeMap<ObjId, MorId> =
        points.iter().enumerate().map(|(pi, p)| (ObjId::new(*p), arrow(pi, 0))).collect();
    let mut compose = BTreeMap::new();
    for (pi, _) in points.iter().enumerate() {
        for (ei, _) in elements.iter().enumerate() {
            let mid = act(pi, ei);
            for (ej, _) in elements.iter().enumerate() {
                compose.insert((arrow(mid, ej), arrow(pi, ei)), arrow(pi, table[ei][ej]));
            }
        }
    }
    FinCat::new(objects, morphisms, identities, compose)
        .expect("action category of a monoid is valid")
}

/// Build the editor stack.
pub fn build_state_machine_example() -> MachineStack {
    let (elements, table) = action_monoid(&EDITOR_STATES, &EDITOR_KEYS, editor_delta);

    // Keyboard: the monoid as a one-object category.
    let kbd_obj = ObjId::new("kbd");
    let kbd_morphisms: Vec<MorRec> = elements
        .iter()
        .map(|(w, _)| MorRec { name: MorId::new(w.clone()), src: kbd_obj.clone(), tgt: kbd_obj.clone() })
        .collect();
    let mut kbd_compose = BTreeMap::new();
    for (i, (wi, _)) in elements.iter().enumerate() {
        for (j, (wj, _)) in elements.iter().enumerate() {
            // compose(g, f) = f then g.
            kbd_compose.insert(
                (MorId::new(wj.clone()), MorId::new(wi.clone())),
                MorId::new(elements[table[i][j]].0.clone()),
            );
        }
    }
    let keyboard = FinCat::new(
        vec![kbd_obj.clone()],
        kbd_morphisms,
        [(kbd_obj.clone(), MorId::new("1"))].into(),
        kbd_compose,
    )
    .expect("keyboard monoid is a valid one-object category");

    // The monoid acts on states directly, and on modes through any
    // representative state (the action is fibrewise by construction).
    let modes = ["view", "ctrl", "write"];
    let mode_index: BTreeMap<&str, usize> =
        modes.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mode_action: Vec<Vec<usize>> = elements
        .iter()
        .map(|(_, map)| {
            modes
                .iter()
                .map(|m| {
                    let reps: Vec<usize> = (0..EDITOR_STATES.len())
                        .filter(|&s| editor_mode(EDITOR_STATES[s]) == *m)
                        .map(|s| mode_index[editor_mode(EDITOR_STATES[map[s]])])
                        .collect();
                    assert!(
                        reps.windows(2).all(|w| w[0] == w[1]),
                        "key action must be fibrewise over modes"
                    );
                    reps[0]
                })
                .collect()
        })
        .collect();

    let state = action_category(&EDITOR_STATES, &elements, &table, |p, e| elements[e].1[p]);
    let mode = action_category(&modes, &elements, &table, |p, e| mode_action[e][p]);

    let state_to_mode = Functor::new(
        state.clone(),
        mode.clone(),
        state
            .objects()
            .iter()
            .map(|o| (o.clone(), ObjId::new(editor_mode(o.as_str()))))
            .collect(),
        state
            .morphisms()
            .iter()
            .map(|m| {
                let word = m.name.as_str().split('@').next().unwrap();
                let target_mode = editor_mode(m.src.as_str());
                (m.name.clone(), MorId::new(format!("{word}@{target_mode}")))
            })
            .collect(),
    )
    .expect("mode projection is a functor");
    let mode_to_keyboard = Functor::new(
        mode.clone(),
        keyboard.clone(),
        mode.objects().iter().map(|o| (o.clone(), kbd_obj.clone())).collect(),
        mode.morphisms()
            .iter()
            .map(|m| {
                let word = m.name.as_str().split('@').next().unwrap();
                (m.name.clone(), MorId::new(word))
            })
            .collect(),
    )
    .expect("keyboard projection is a functor");

    let state_lens = lens_from_dof(&state_to_mode).expect("state projection is a discrete opfibration");
    let mode_lens =
        lens_from_dof(&mode_to_keyboard).expect("mode projection is a discrete opfibration");
    MachineStack { state, mode, keyboard, state_lens, mode_lens }
}

/// Replay a key script through a lens over the keyboard, starting from the
/// given object; each key is a single-generator arrow of the codomain.
pub fn replay(machine: &Lens, start: &ObjId, script: &[&str]) -> ObjId {
    let mut at = start.clone();
    for key in script {
        let lifted = machine.lift(&at, &MorId::new(*key)).clone();
        at = machine.source().tgt(&lifted).clone();
    }
    at
}

/// A diagram of two pullback squares over the coproduct row
/// `2 -> 2 + 1 <- 1`, with the identity as the centre lens. Both
/// extensivity verdicts hold on it.
pub fn extensivity_demo() -> crate::constructions::ExtensivityDiagram {
    use crate::constructions::{imported_pullback, ExtensivityDiagram};
    use crate::fincat::coproduct_cat;

    let a = seeds::walking_arrow();
    let b = seeds::terminal();
    let (sum, inj_a, inj_b) = coproduct_cat(&a, &b);
    let inj_left = lens_from_dof(&inj_a).unwrap();
    let inj_right = lens_from_dof(&inj_b).unwrap();
    let centre = Lens::identity(&sum);

    let left_square = imported_pullback(&inj_left, &centre);
    let right_square = imported_pullback(&inj_right, &centre);
    ExtensivityDiagram {
        left: left_square.legs[0].clone(),
        top_left: left_square.legs[1].clone(),
        right: right_square.legs[0].clone(),
        top_right: right_square.legs[1].clone(),
        centre,
        inj_left,
        inj_right,
    }
}

/// The same diagram with the initial object of the left pullback deleted:
/// the squares stop being pullbacks and the top row stops being a
/// coproduct, in step.
pub fn extensivity_demo_perturbed() -> crate::constructions::ExtensivityDiagram {
    use crate::fincat::full_subcategory;

    let mut d = extensivity_demo();
    let x = d.top_left.source().clone();
    // Keep only the component over y; x has no incoming arrows, so the
    // remainder is closed under outgoing morphisms.
    let keep: std::collections::BTreeSet<ObjId> = x
        .objects()
        .iter()
        .filter(|o| o.as_str().contains("(y,"))
        .cloned()
        .collect();
    assert_eq!(keep.len(), 1);
    let (_, incl) = full_subcategory(&x, &keep);
    let incl_lens = lens_from_dof(&incl).expect("outgoing-closed inclusion");
    d.top_left = incl_lens.then(&d.top_left).unwrap();
    d.left = incl_lens.then(&d.left).unwrap();
    d
}

/// The two-phase boot machine: everyday operation living over the OS state
/// of a `BIOS -> OS` base.
pub fn bios_os_lens() -> Lens {
    let base = FinCat::new(
        vec![ObjId::new("BIOS"), ObjId::new("OS")],
        vec![
            MorRec::new("1BIOS", "BIOS", "BIOS"),
            MorRec::new("1OS", "OS", "OS"),
            MorRec::new("boot", "BIOS", "OS"),
            MorRec::new("op", "OS", "OS"),
        ],
        [("BIOS", "1BIOS"), ("OS", "1OS")]
            .map(|(o, m)| (ObjId::new(o), MorId::new(m)))
            .into(),
        [
            ("1BIOS", "1BIOS", "1BIOS"),
            ("1OS", "1OS", "1OS"),
            ("boot", "1BIOS", "boot"),
            ("1OS", "boot", "boot"),
            ("op", "boot", "boot"),
            ("op", "1OS", "op"),
            ("1OS", "op", "op"),
            ("op", "op", "op"),
        ]
        .map(|(g, f, gf)| ((MorId::new(g), MorId::new(f)), MorId::new(gf)))
        .into(),
    )
    .expect("boot base is a valid category");

    // Two distinct everyday activities, both invisible at the mode level;
    // the last action wins under composition.
    let everyday = FinCat::new(
        vec![ObjId::new("EverydayOperation")],
        vec![
            MorRec::new("1e", "EverydayOperation", "EverydayOperation"),
            MorRec::new("edit", "EverydayOperation", "EverydayOperation"),
            MorRec::new("browse", "EverydayOperation", "EverydayOperation"),
        ],
        [(ObjId::new("EverydayOperation"), MorId::new("1e"))].into(),
        [
            ("1e", "1e", "1e"),
            ("edit", "1e", "edit"),
            ("1e", "edit", "edit"),
            ("browse", "1e", "browse"),
            ("1e", "browse", "browse"),
            ("edit", "edit", "edit"),
            ("edit", "browse", "edit"),
            ("browse", "edit", "browse"),
            ("browse", "browse", "browse"),
        ]
        .map(|(g, f, gf)| ((MorId::new(g), MorId::new(f)), MorId::new(gf)))
        .into(),
    )
    .expect("everyday category is valid");

    let functor = Functor::new(
        everyday.clone(),
        base,
        [(ObjId::new("EverydayOperation"), ObjId::new("OS"))].into(),
        [("1e", "1OS"), ("edit", "op"), ("browse", "op")]
            .map(|(m, i)| (MorId::new(m), MorId::new(i)))
            .into(),
    )
    .expect("everyday operation lives over the OS");
    let lift = [
        (("EverydayOperation", "1OS"), "1e"),
        (("EverydayOperation", "op"), "edit"),
    ]
    .map(|((o, u), w)| ((ObjId::new(o), MorId::new(u)), MorId::new(w)))
    .into();
    Lens::new(functor, lift).expect("boot machine lens is lawful")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::{is_discrete_opfibration, is_epi_lens, is_mono_lens};

    #[test]
    fn codesign_feasibility_counts() {
        let p = build_codesign_example();
        assert_eq!(p.feasible().len(), 4);
        assert_eq!(p.infeasible().len(), 2);
        assert_eq!(
            p.infeasible(),
            vec![pair("average", "cheap"), pair("fast", "cheap")]
        );
    }

    #[test]
    fn codesign_strategy_repairs_into_feasible() {
        for p in [build_codesign_example(), alternative_strategy()] {
            let to_true = MorId::new("le_false_true");
            for o in p.infeasible() {
                let w = p.opinion.lift(&o, &to_true);
                let target = p.domain().tgt(w);
                assert!(p.feasible().contains(target), "repair of {o} must be feasible");
            }
        }
    }

    #[test]
    fn component_posets_are_thin() {
        let p = build_codesign_example();
        assert!(p.functionality.is_thin());
        assert!(p.resources.is_thin());
        assert!(p.bool_cat.is_thin());
        assert!(p.domain().is_thin());
    }

    #[test]
    fn shipped_strategies_pick_the_documented_repairs() {
        let to_true = MorId::new("le_false_true");
        let p = build_codesign_example();
        // Paying more keeps the performance grade.
        let w = p.opinion.lift(&pair("average", "cheap"), &to_true);
        assert_eq!(p.domain().tgt(w), &pair("average", "expensive"));

        let q = alternative_strategy();
        // Sacrificing performance keeps the ride cheap.
        let w = q.opinion.lift(&pair("average", "cheap"), &to_true);
        assert_eq!(q.domain().tgt(w), &pair("slow", "cheap"));
    }

    #[test]
    fn strategies_differ_only_on_infeasible_rows() {
        let p = build_codesign_example();
        let q = alternative_strategy();
        assert_eq!(p.opinion.functor(), q.opinion.functor());
        assert_ne!(p.opinion, q.opinion);
        for ((o, u), w) in p.opinion.lift_table() {
            if p.feasible().contains(o) {
                assert_eq!(q.opinion.lift(o, u), w);
            }
        }
    }

    #[test]
    fn expert_equaliser_keeps_exactly_the_feasible_pairs() {
        let p = build_codesign_example();
        let q = alternative_strategy();
        let eq = equalise_experts(&p, &q).unwrap();
        let kept: Vec<ObjId> = eq.object.objects().to_vec();
        assert_eq!(kept, p.feasible());
        assert!(is_mono_lens(&eq.inclusion));
    }

    #[test]
    fn equalising_an_expert_with_itself_is_total() {
        let p = build_codesign_example();
        let eq = equalise_experts(&p, &p).unwrap();
        assert_eq!(&eq.object, p.domain());
    }

    #[test]
    fn total_disagreement_has_empty_equaliser() {
        let (f, g) = total_disagreement_pair();
        let eq = equaliser_lens(&f, &g);
        assert!(eq.object.objects().is_empty());
    }

    #[test]
    fn editor_stack_is_a_dof_tower() {
        let stack = build_state_machine_example();
        assert!(is_discrete_opfibration(stack.state_lens.functor()).holds);
        assert!(is_discrete_opfibration(stack.mode_lens.functor()).holds);
        // Composites of lawful lenses are lawful; asserted via validation.
        let comp = stack.composite();
        assert!(Lens::new(comp.functor().clone(), comp.lift_table().clone()).is_ok());
    }

    #[test]
    fn write_mode_fibre_is_the_buffer_states() {
        let stack = build_state_machine_example();
        let fibre: Vec<&ObjId> = stack
            .state
            .objects()
            .iter()
            .filter(|o| stack.state_lens.functor().on_object(o).as_str() == "write")
            .collect();
        let expected = ["w0e", "w0f", "w1e", "w1f"].map(ObjId::new);
        assert_eq!(fibre, expected.iter().collect::<Vec<_>>());
    }

    #[test]
    fn fibres_partition_the_states() {
        let stack = build_state_machine_example();
        let total: usize = stack
            .mode
            .objects()
            .iter()
            .map(|m| {
                stack
                    .state
                    .objects()
                    .iter()
                    .filter(|o| stack.state_lens.functor().on_object(o) == m)
                    .count()
            })
            .sum();
        assert_eq!(total, stack.state.objects().len());
    }

    #[test]
    fn window_manager_forwards_keystrokes_to_the_focused_summand() {
        // Two programs over the shared keyboard; the coproduct mediator
        // routes each keystroke into whichever summand holds the focus.
        let stack = build_state_machine_example();
        let program = stack.composite();
        let wm = crate::constructions::coproduct_lens(&program, &program);

        let focused_left = wm.inj_left.functor().on_object(&ObjId::new("v0")).clone();
        let lifted = wm.mediator.lift(&focused_left, &MorId::new("d")).clone();
        // The lift stays in the left summand and matches the program's own
        // transition.
        let inside = program.lift(&ObjId::new("v0"), &MorId::new("d"));
        assert_eq!(&lifted, wm.inj_left.functor().on_morphism(inside));

        let focused_right = wm.inj_right.functor().on_object(&ObjId::new("w1e")).clone();
        let lifted_r = wm.mediator.lift(&focused_right, &MorId::new("v")).clone();
        let inside_r = program.lift(&ObjId::new("w1e"), &MorId::new("v"));
        assert_eq!(&lifted_r, wm.inj_right.functor().on_morphism(inside_r));
    }

    #[test]
    fn pullback_machines_update_components_concurrently() {
        // Two independent components over the shared keyboard: states of
        // the imported pullback are pairs, and one keystroke advances both.
        let stack = build_state_machine_example();
        let machine = &stack.mode_lens;
        let cone = crate::constructions::imported_pullback(machine, machine);
        let apex = &cone.apex;

        let paired = ObjId::new("(view,ctrl)");
        assert!(apex.has_object(&paired), "pullback states are pairs");
        let over = machine.lift(&ObjId::new("view"), &MorId::new("w")).clone();
        let lifted = cone.legs[0].lift(&paired, &over).clone();
        let tgt = apex.tgt(&lifted);
        // w is ignored in view mode but opens a buffer in control mode.
        assert_eq!(tgt, &ObjId::new("(view,write)"));
    }

    #[test]
    fn five_key_script_replays_deterministically() {
        let stack = build_state_machine_example();
        let comp = stack.composite();
        // From view: enter control, open a buffer, type, commit, return to view.
        let end = replay(&comp, &ObjId::new("v0"), &["d", "w", "v", "d", "v"]);
        assert_eq!(end, ObjId::new("v0"));
        // Moving twice in view mode toggles the cursor back.
        let back = replay(&comp, &ObjId::new("v1"), &["m", "m"]);
        assert_eq!(back, ObjId::new("v1"));
    }

    #[test]
    fn extensivity_demo_verdicts_track_each_other() {
        let bounds = crate::oracle::Bounds::targeted();
        let d = extensivity_demo();
        let v = crate::constructions::extensivity_check(&d, &[], &bounds).unwrap();
        assert!(v.squares_are_pullbacks);
        assert!(v.top_row_is_coproduct);

        let p = extensivity_demo_perturbed();
        let v2 = crate::constructions::extensivity_check(&p, &[], &bounds).unwrap();
        assert!(!v2.squares_are_pullbacks);
        assert!(!v2.top_row_is_coproduct);
    }

    #[test]
    fn bios_os_lens_is_lawful_and_epi_free() {
        let l = bios_os_lens();
        assert!(!is_epi_lens(&l));
        assert_eq!(l.source().objects().len(), 1);
        assert_eq!(l.target().objects().len(), 2);
    }

    mod replay_matches_raw_transitions {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn stack() -> &'static MachineStack {
            static STACK: OnceLock<MachineStack> = OnceLock::new();
            STACK.get_or_init(build_state_machine_example)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            /// Folding the lift table over a key script agrees with the
            /// raw transition function the fixture was generated from.
            #[test]
            fn replay_is_the_delta_fold(
                start in 0usize..EDITOR_STATES.len(),
                script in proptest::collection::vec(0usize..EDITOR_KEYS.len(), 0..12),
            ) {
                let stack = stack();
                let composite = stack.composite();
                let keys: Vec<&str> = script.iter().map(|&k| EDITOR_KEYS[k]).collect();

                let via_lens = replay(&composite, &ObjId::new(EDITOR_STATES[start]), &keys);

                let mut expected = EDITOR_STATES[start].to_owned();
                for key in &keys {
                    expected = editor_delta(&expected, key);
                }
                prop_assert_eq!(via_lens.as_str(), expected.as_str());

                // The state's mode agrees with the mode-level machine.
                prop_assert_eq!(
                    stack.state_lens.functor().on_object(&via_lens).as_str(),
                    editor_mode(&expected)
                );
            }
        }
    }
}
