//! DOT graph export for category and lens documents.

use std::fmt::Write as _;

use thiserror::Error;

use crate::fincat::FinCat;
use crate::io::Document;
use crate::lens::Lens;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DotError {
    #[error("cannot render a {0} document as a graph")]
    UnsupportedKind(&'static str),
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Render a document as a DOT digraph. Categories draw objects as nodes and
/// non-identity morphisms as labelled edges. Lenses draw the source
/// category clustered by the fibres of the underlying functor, and each
/// edge that is a chosen lift lists the codomain morphisms it lifts.
/// Output is stable across runs.
pub fn export_dot(doc: &Document) -> Result<String, DotError> {
    match doc {
        Document::Category(c) => Ok(category_dot(c)),
        Document::Lens(l) => Ok(lens_dot(l)),
        Document::Functor(_) => Err(DotError::UnsupportedKind("functor")),
        Document::Diagram(_) => Err(DotError::UnsupportedKind("diagram")),
    }
}

fn category_dot(c: &FinCat) -> String {
    let mut out = String::from("digraph category {\n");
    for o in c.objects() {
        let _ = writeln!(out, "  {};", quote(o.as_str()));
    }
    for m in c.morphisms() {
        if c.is_identity(&m.name) {
            continue;
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(m.src.as_str()),
            quote(m.tgt.as_str()),
            quote(m.name.as_str())
        );
    }
    out.push_str("}\n");
    out
}

fn lens_dot(l: &Lens) -> String {
    let (a, b) = (l.source(), l.target());
    let mut out = String::from("digraph lens {\n");
    for (i, fibre) in b.objects().iter().enumerate() {
        let members: Vec<_> = a
            .objects()
            .iter()
            .filter(|o| l.functor().on_object(o) == fibre)
            .collect();
        if members.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label={};", quote(fibre.as_str()));
        for o in members {
            let _ = writeln!(out, "    {};", quote(o.as_str()));
        }
        out.push_str("  }\n");
    }
    for m in a.morphisms() {
        if a.is_identity(&m.name) {
            continue;
        }
        // The codomain morphisms this edge is the chosen lift of.
        let lifts: Vec<&str> = l
            .lift_table()
            .iter()
            .filter(|((at, _), w)| at == &m.src && *w == &m.name)
            .map(|((_, over), _)| over.as_str())
            .filter(|over| !b.is_identity(&(*over).into()))
            .collect();
        let label = if lifts.is_empty() {
            m.name.as_str().to_owned()
        } else {
            format!("{} | lifts: {}", m.name.as_str(), lifts.join(", "))
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(m.src.as_str()),
            quote(m.tgt.as_str()),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
