//! Snapshot documents.
//!
//! The text form is line oriented and sorted wherever order is free, so
//! two dumps of the same state are byte-identical. The declaration lines
//! are valid model syntax; see `docs/snapshot-format.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::associations::{rel_of, AssocDecl, Strategy};
use crate::classes::{AttrKind, ClassInfo, World};
use crate::datastore::Store;
use crate::universe::Value;

pub const HEADER: &str = "snapshot v1";
const DECLARATION_SECTIONS: [&str; 3] = ["[classes]", "[associations]", "[statics]"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub name: String,
    pub decl: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocEntry {
    pub name: String,
    pub strategy: &'static str,
    pub decl: String,
    pub links: Vec<Vec<String>>,
    /// Set when the links cannot be retrieved, e.g. an inconsistent
    /// redundant realization.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaticEntry {
    pub name: String,
    pub location: String,
    pub decl: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectEntry {
    pub oid: String,
    pub class: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocationEntry {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    pub classes: Vec<ClassEntry>,
    pub statics: Vec<StaticEntry>,
    pub objects: Vec<ObjectEntry>,
    pub locations: Vec<LocationEntry>,
    pub associations: Vec<AssocEntry>,
}

pub fn class_decl_text(info: &ClassInfo) -> String {
    let d = &info.decl;
    let mut s = format!("class {}", d.name);
    let join = |names: &[crate::universe::Name]| names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ");
    if !d.supers.is_empty() {
        let _ = write!(s, " extends {}", join(&d.supers));
    }
    if !d.subclass_of.is_empty() {
        let _ = write!(s, " subclassOf {}", join(&d.subclass_of));
    }
    if d.attrs.is_empty() {
        s.push_str(" {}");
        return s;
    }
    let attrs: Vec<String> = d
        .attrs
        .iter()
        .map(|a| match &a.kind {
            AttrKind::Mutable(t) => format!("{}: loc {t}", a.name),
            AttrKind::PlainConst(t) => format!("{}: {t}", a.name),
        })
        .collect();
    let _ = write!(s, " {{ {} }}", attrs.join(", "));
    s
}

pub fn assoc_decl_text(decl: &AssocDecl) -> String {
    let sig: Vec<String> = decl.signature.iter().map(|c| c.to_string()).collect();
    let via = match &decl.strategy {
        Strategy::AttributeOwned { owner_index, attr } => {
            format!("attribute {}.{attr}", decl.signature[*owner_index])
        }
        Strategy::Mediator { class, .. } => format!("mediator {class}"),
        Strategy::RedundantHybrid {
            direct_attr,
            collection_attr,
        } => format!(
            "redundant {}.{direct_attr}, {}.{collection_attr}",
            decl.signature[0], decl.signature[1]
        ),
        Strategy::Ordered {
            owner_index,
            list_attr,
        } => format!("ordered {}.{list_attr}", decl.signature[*owner_index]),
        Strategy::Qualified {
            class,
            qualifier_type,
            ..
        } => format!("qualified {class} by {qualifier_type}"),
    };
    format!("assoc {} ({}) via {via}", decl.name, sig.join(", "))
}

pub fn dump_snapshot(world: &World, store: &Store) -> Snapshot {
    let classes = world
        .classes()
        .map(|info| ClassEntry {
            name: info.decl.name.to_string(),
            decl: class_decl_text(info),
        })
        .collect();

    let associations = world
        .assocs()
        .map(|decl| {
            let (links, error) = match rel_of(world, store, &decl.name) {
                Ok(links) => (
                    links
                        .iter()
                        .map(|t| t.iter().map(Value::to_string).collect())
                        .collect(),
                    None,
                ),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            AssocEntry {
                name: decl.name.to_string(),
                strategy: decl.strategy.label(),
                decl: assoc_decl_text(decl),
                links,
                error,
            }
        })
        .collect();

    let statics = world
        .statics()
        .map(|(name, loc)| {
            let ty = world.loc_type(loc).map(|t| t.to_string()).unwrap_or_default();
            let value = store.val_loc(loc).map(|v| v.to_string()).unwrap_or_else(|_| "unknown".into());
            StaticEntry {
                name: name.to_string(),
                location: loc.to_string(),
                decl: format!("static {name} : {ty} = {value}"),
            }
        })
        .collect();

    let objects = store
        .oids()
        .iter()
        .map(|oid| {
            let values = match store.vals(world, oid) {
                Ok(vals) => vals.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                Err(e) => [("error".to_string(), e.to_string())].into(),
            };
            ObjectEntry {
                oid: oid.to_string(),
                class: oid.class.to_string(),
                values,
            }
        })
        .collect();

    let locations = store
        .memory()
        .iter()
        .map(|(loc, v)| LocationEntry {
            id: loc.to_string(),
            ty: world.loc_type(*loc).map(|t| t.to_string()).unwrap_or_else(|| "?".into()),
            value: v.to_string(),
        })
        .collect();

    Snapshot {
        classes,
        associations,
        statics,
        objects,
        locations,
    }
}

impl Snapshot {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{HEADER}");
        let _ = writeln!(s, "[classes]");
        for c in &self.classes {
            let _ = writeln!(s, "{}", c.decl);
        }
        let _ = writeln!(s, "[statics]");
        for st in &self.statics {
            let _ = writeln!(s, "{}  // {}", st.decl, st.location);
        }
        let _ = writeln!(s, "[objects]");
        for o in &self.objects {
            let vals: Vec<String> = o.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            if vals.is_empty() {
                let _ = writeln!(s, "{} : {} {{}}", o.oid, o.class);
            } else {
                let _ = writeln!(s, "{} : {} {{ {} }}", o.oid, o.class, vals.join(", "));
            }
        }
        let _ = writeln!(s, "[locations]");
        for l in &self.locations {
            let _ = writeln!(s, "{} : {} = {}", l.id, l.ty, l.value);
        }
        let _ = writeln!(s, "[associations]");
        for a in &self.associations {
            let _ = writeln!(s, "{}", a.decl);
            for l in &a.links {
                let _ = writeln!(s, "  link ({})", l.join(", "));
            }
            if let Some(e) = &a.error {
                let _ = writeln!(s, "  inconsistent: {e}");
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("snapshot serializes")
    }
}

/// The model-syntax lines of a snapshot text: class, association and
/// static declarations, in order.
pub fn declarations(text: &str) -> String {
    let mut out = String::new();
    let mut in_decls = false;
    for line in text.lines() {
        if line.starts_with('[') {
            in_decls = DECLARATION_SECTIONS.contains(&line);
            continue;
        }
        if in_decls && !line.starts_with(' ') && !line.is_empty() {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}
