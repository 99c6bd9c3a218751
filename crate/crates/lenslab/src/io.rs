//! Bit-exact JSON serialization of categories, functors, lenses, and
//! diagram bundles.
//!
//! Each document is a single JSON object `{kind, format_version, payload}`.
//! Parsing validates the payload through the category/functor/lens
//! validators, so a parsed document is always lawful; unknown fields are
//! rejected. Identity morphisms and identity composites may be omitted on
//! input and are reconstructed; serialization always writes them, so
//! `parse(serialize(x)) = x` exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{FinCat, Functor, MorId, MorRec, ObjId};
use crate::lens::Lens;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Error)]
pub enum IoError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown field: {0}")]
    UnknownField(String),
    #[error("unknown document kind {0:?}")]
    UnknownKind(String),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("file reference {path:?} could not be read: {message}")]
    FileReference { path: PathBuf, message: String },
    #[error("file references are not allowed without a base directory")]
    NoBaseDirectory,
    #[error("validation failed:\n{0}")]
    ValidationFailed(String),
}

fn classify(err: serde_json::Error) -> IoError {
    let msg = err.to_string();
    if msg.contains("unknown field") {
        IoError::UnknownField(msg)
    } else {
        IoError::Syntax(msg)
    }
}

fn invalid(e: impl fmt::Display) -> IoError {
    IoError::ValidationFailed(e.to_string())
}

/// A parsed, validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(FinCat),
    Functor(Functor),
    Lens(Lens),
    Diagram(DiagramBundle),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::Lens(_) => "lens",
            Document::Diagram(_) => "diagram",
        }
    }
}

/// A named collection of categories, functors, and lenses; commands that
/// need several inputs at once (extensivity diagrams) read these.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramBundle {
    pub categories: BTreeMap<String, FinCat>,
    pub functors: BTreeMap<String, Functor>,
    pub lenses: BTreeMap<String, Lens>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: String,
    format_version: u32,
    payload: serde_json::Value,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    objects: Vec<String>,
    morphisms: Vec<MorphismDoc>,
    identities: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CatRef {
    Reference(String),
    Inline(CategoryDoc),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorDoc {
    source: CatRef,
    target: CatRef,
    object_map: BTreeMap<String, String>,
    morphism_map: BTreeMap<String, String>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftRowDoc {
    at: String,
    over: String,
    to: String,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LensDoc {
    functor: FunctorDoc,
    lift: Vec<LiftRowDoc>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    #[serde(default)]
    categories: BTreeMap<String, CategoryDoc>,
    #[serde(default)]
    functors: BTreeMap<String, FunctorDoc>,
    #[serde(default)]
    lenses: BTreeMap<String, LensDoc>,
}

/// Parse and validate a document. `base` is the directory used to resolve
/// `file:` references in functor sources and targets; passing `None`
/// rejects such references.
pub fn parse_document(text: &str, base: Option<&Path>) -> Result<Document, IoError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(classify)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(IoError::UnsupportedVersion(raw.format_version));
    }
    match raw.kind.as_str() {
        "category" => {
            let doc: CategoryDoc = serde_json::from_value(raw.payload).map_err(classify)?;
            Ok(Document::Category(category_from_doc(&doc)?))
        }
        "functor" => {
            let doc: FunctorDoc = serde_json::from_value(raw.payload).map_err(classify)?;
            Ok(Document::Functor(functor_from_doc(&doc, base)?))
        }
        "lens" => {
            let doc: LensDoc = serde_json::from_value(raw.payload).map_err(classify)?;
            Ok(Document::Lens(lens_from_doc(&doc, base)?))
        }
        "diagram" => {
            let doc: DiagramDoc = serde_json::from_value(raw.payload).map_err(classify)?;
            let mut bundle = DiagramBundle::default();
            for (name, c) in &doc.categories {
                bundle.categories.insert(name.clone(), category_from_doc(c)?);
            }
            for (name, f) in &doc.functors {
                bundle.functors.insert(name.clone(), functor_from_doc(f, base)?);
            }
            for (name, l) in &doc.lenses {
                bundle.lenses.insert(name.clone(), lens_from_doc(l, base)?);
            }
            Ok(Document::Diagram(bundle))
        }
        other => Err(IoError::UnknownKind(other.to_owned())),
    }
}

/// Serialize a document; deterministic, with every identity morphism and
/// identity composite written out.
pub fn serialize_document(doc: &Document) -> String {
    let (kind, payload) = match doc {
        Document::Category(c) => {
            ("category", serde_json::to_value(category_to_doc(c)).unwrap())
        }
        Document::Functor(f) => ("functor", serde_json::to_value(functor_to_doc(f)).unwrap()),
        Document::Lens(l) => ("lens", serde_json::to_value(lens_to_doc(l)).unwrap()),
        Document::Diagram(d) => {
            let doc = DiagramDoc {
                categories: d
                    .categories
                    .iter()
                    .map(|(k, v)| (k.clone(), category_to_doc(v)))
                    .collect(),
                functors: d
                    .functors
                    .iter()
                    .map(|(k, v)| (k.clone(), functor_to_doc(v)))
                    .collect(),
                lenses: d.lenses.iter().map(|(k, v)| (k.clone(), lens_to_doc(v))).collect(),
            };
            ("diagram", serde_json::to_value(doc).unwrap())
        }
    };
    let raw = RawDocument {
        kind: kind.to_owned(),
        format_version: FORMAT_VERSION,
        payload,
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("document serializes");
    text.push('\n');
    text
}

fn category_from_doc(doc: &CategoryDoc) -> Result<FinCat, IoError> {
    let objects: Vec<ObjId> = doc.objects.iter().map(ObjId::from).collect();
    let mut morphisms: Vec<MorRec> = doc
        .morphisms
        .iter()
        .map(|m| MorRec::new(m.name.as_str(), m.src.as_str(), m.tgt.as_str()))
        .collect();
    // Identity morphisms may be omitted from the listing.
    for (o, id) in &doc.identities {
        if !morphisms.iter().any(|m| m.name.as_str() == id) {
            morphisms.push(MorRec::new(id.as_str(), o.as_str(), o.as_str()));
        }
    }
    let identities: BTreeMap<ObjId, MorId> = doc
        .identities
        .iter()
        .map(|(o, m)| (ObjId::from(o), MorId::from(m)))
        .collect();
    let mut compose: BTreeMap<(MorId, MorId), MorId> = BTreeMap::new();
    for [g, f, gf] in &doc.compose {
        let key = (MorId::from(g), MorId::from(f));
        let value = MorId::from(gf);
        if let Some(previous) = compose.insert(key, value.clone()) {
            if previous != value {
                return Err(IoError::ValidationFailed(format!(
                    "contradictory composition entries for ({g}, {f})"
                )));
            }
        }
    }
    // Identity composites may be omitted and are reconstructed from the
    // unit laws.
    for m in &morphisms {
        if let (Some(ids), Some(idt)) = (identities.get(&m.src), identities.get(&m.tgt)) {
            compose.entry((m.name.clone(), ids.clone())).or_insert_with(|| m.name.clone());
            compose.entry((idt.clone(), m.name.clone())).or_insert_with(|| m.name.clone());
        }
    }
    FinCat::new(objects, morphisms, identities, compose).map_err(invalid)
}

fn resolve_cat_ref(r: &CatRef, base: Option<&Path>) -> Result<FinCat, IoError> {
    match r {
        CatRef::Inline(doc) => category_from_doc(doc),
        CatRef::Reference(s) => {
            let rel = s
                .strip_prefix("file:")
                .ok_or_else(|| IoError::Syntax(format!("bad category reference {s:?}")))?;
            let base = base.ok_or(IoError::NoBaseDirectory)?;
            let path = base.join(rel);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| IoError::FileReference { path: path.clone(), message: e.to_string() })?;
            match parse_document(&text, path.parent())? {
                Document::Category(c) => Ok(c),
                other => Err(IoError::ValidationFailed(format!(
                    "referenced file {path:?} holds a {} document, expected a category",
                    other.kind()
                ))),
            }
        }
    }
}

fn functor_from_doc(doc: &FunctorDoc, base: Option<&Path>) -> Result<Functor, IoError> {
    let source = resolve_cat_ref(&doc.source, base)?;
    let target = resolve_cat_ref(&doc.target, base)?;
    let object_map = doc
        .object_map
        .iter()
        .map(|(k, v)| (ObjId::from(k), ObjId::from(v)))
        .collect();
    let morphism_map = doc
        .morphism_map
        .iter()
        .map(|(k, v)| (MorId::from(k), MorId::from(v)))
        .collect();
    Functor::new(source, target, object_map, morphism_map).map_err(invalid)
}

fn lens_from_doc(doc: &LensDoc, base: Option<&Path>) -> Result<Lens, IoError> {
    let functor = functor_from_doc(&doc.functor, base)?;
    let lift = doc
        .lift
        .iter()
        .map(|row| ((ObjId::from(&row.at), MorId::from(&row.over)), MorId::from(&row.to)))
        .collect();
    Lens::new(functor, lift).map_err(invalid)
}

fn category_to_doc(c: &FinCat) -> CategoryDoc {
    CategoryDoc {
        objects: c.objects().iter().map(|o| o.as_str().to_owned()).collect(),
        morphisms: c
            .morphisms()
            .iter()
            .map(|m| MorphismDoc {
                name: m.name.as_str().to_owned(),
                src: m.src.as_str().to_owned(),
                tgt: m.tgt.as_str().to_owned(),
            })
            .collect(),
        identities: c
            .identities()
            .iter()
            .map(|(o, m)| (o.as_str().to_owned(), m.as_str().to_owned()))
            .collect(),
        compose: c
            .compose_table()
            .iter()
            .map(|((g, f), gf)| {
                [g.as_str().to_owned(), f.as_str().to_owned(), gf.as_str().to_owned()]
            })
            .collect(),
    }
}

fn functor_to_doc(f: &Functor) -> FunctorDoc {
    FunctorDoc {
        source: CatRef::Inline(category_to_doc(f.source())),
        target: CatRef::Inline(category_to_doc(f.target())),
        object_map: f
            .object_map()
            .iter()
            .map(|(k, v)| (k.as_str().to_owned(), v.as_str().to_owned()))
            .collect(),
        morphism_map: f
            .morphism_map()
            .iter()
            .map(|(k, v)| (k.as_str().to_owned(), v.as_str().to_owned()))
            .collect(),
    }
}

fn lens_to_doc(l: &Lens) -> LensDoc {
    LensDoc {
        functor: functor_to_doc(l.functor()),
        lift: l
            .lift_table()
            .iter()
            .map(|((at, over), to)| LiftRowDoc {
                at: at.as_str().to_owned(),
                over: over.as_str().to_owned(),
                to: to.as_str().to_owned(),
            })
            .collect(),
    }
}
