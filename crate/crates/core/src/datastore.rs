//! Snapshot stores.
//!
//! A [`Store`] is a value: the set of existing objects and a finite mapping
//! from locations to their contents. Updates return a new snapshot; the
//! persistent maps underneath make that cheap, and any earlier snapshot
//! remains valid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use im::{OrdMap, OrdSet};

use crate::associations::check_assoc_consistency;
use crate::classes::{AttrKind, World};
use crate::error::{ModelError, Result};
use crate::universe::{in_carrier, Loc, Name, Oid, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Store {
    oids: OrdSet<Oid>,
    mem: OrdMap<Loc, Value>,
}

impl Store {
    pub fn oids(&self) -> &OrdSet<Oid> {
        &self.oids
    }

    pub fn contains(&self, oid: &Oid) -> bool {
        self.oids.contains(oid)
    }

    pub fn locations(&self) -> BTreeSet<Loc> {
        self.mem.keys().copied().collect()
    }

    /// The raw location mapping.
    pub fn memory(&self) -> &OrdMap<Loc, Value> {
        &self.mem
    }

    pub fn val_loc(&self, loc: Loc) -> Result<Value> {
        self.mem
            .get(&loc)
            .cloned()
            .ok_or(ModelError::UnmappedLocation(loc))
    }

    /// `ds[loc = v]`. Checks only that the value fits the location; no
    /// association bookkeeping happens here.
    pub fn set_val_loc(&self, world: &World, loc: Loc, v: Value) -> Result<Store> {
        if !self.mem.contains_key(&loc) {
            return Err(ModelError::UnmappedLocation(loc));
        }
        let ty = world.loc_type(loc).ok_or(ModelError::UnmappedLocation(loc))?;
        world.check_storable(self, &v, ty)?;
        Ok(self.insert_location(loc, v))
    }

    pub(crate) fn insert_location(&self, loc: Loc, v: Value) -> Store {
        Store {
            oids: self.oids.clone(),
            mem: self.mem.update(loc, v),
        }
    }

    fn attr_slot(&self, world: &World, oid: &Oid, at: &Name) -> Result<(AttrKind, Value)> {
        if !self.contains(oid) {
            return Err(ModelError::UnknownOid(oid.clone()));
        }
        let info = world.class(&oid.class)?;
        let attr = info.attr(at).ok_or_else(|| ModelError::NoSuchAttr {
            class: oid.class.clone(),
            attr: at.clone(),
        })?;
        let field = match world.instance(oid) {
            Some(Value::Rec(fields)) => fields.get(at).cloned(),
            _ => None,
        }
        .ok_or_else(|| ModelError::UnknownOid(oid.clone()))?;
        Ok((attr.kind.clone(), field))
    }

    /// Current value of an attribute: the content of its location for a
    /// mutable attribute, the record field itself for a constant one.
    pub fn val_attr(&self, world: &World, oid: &Oid, at: &Name) -> Result<Value> {
        match self.attr_slot(world, oid, at)? {
            (AttrKind::Mutable(_), Value::Loc(loc)) => self.val_loc(loc),
            (AttrKind::Mutable(_), other) => Err(ModelError::WrongValueKind {
                expected: "location",
                found: other.to_string(),
            }),
            (AttrKind::PlainConst(_), v) => Ok(v),
        }
    }

    pub fn set_val_attr(&self, world: &World, oid: &Oid, at: &Name, v: Value) -> Result<Store> {
        match self.attr_slot(world, oid, at)? {
            (AttrKind::Mutable(_), Value::Loc(loc)) => self.set_val_loc(world, loc, v),
            (AttrKind::Mutable(_), other) => Err(ModelError::WrongValueKind {
                expected: "location",
                found: other.to_string(),
            }),
            (AttrKind::PlainConst(_), _) => Err(ModelError::ImmutableAttr {
                class: oid.class.clone(),
                attr: at.clone(),
            }),
        }
    }

    /// All attribute values of an object, keyed by attribute name.
    pub fn vals(&self, world: &World, oid: &Oid) -> Result<BTreeMap<Name, Value>> {
        if !self.contains(oid) {
            return Err(ModelError::UnknownOid(oid.clone()));
        }
        world
            .class(&oid.class)?
            .attrs
            .iter()
            .map(|a| Ok((a.name.clone(), self.val_attr(world, oid, &a.name)?)))
            .collect()
    }

    /// Adds an allocated object together with the contents of its
    /// locations. `contents` must cover exactly the object's location fields.
    pub fn addobj(&self, world: &World, oid: &Oid, contents: &BTreeMap<Loc, Value>) -> Result<Store> {
        if self.contains(oid) {
            return Err(ModelError::DuplicateObject(oid.clone()));
        }
        let own: BTreeSet<Loc> = world
            .object_locations(oid)?
            .into_iter()
            .map(|(_, l)| l)
            .collect();
        if own.len() != contents.len() || !contents.keys().all(|l| own.contains(l)) {
            return Err(ModelError::WrongLocationSet(oid.clone()));
        }
        // The object may refer to itself.
        let mut next = Store {
            oids: self.oids.update(oid.clone()),
            mem: self.mem.clone(),
        };
        for (loc, v) in contents {
            let ty = world.loc_type(*loc).ok_or(ModelError::UnmappedLocation(*loc))?;
            world.check_storable(&next, v, ty)?;
        }
        for (loc, v) in contents {
            next.mem.insert(*loc, v.clone());
        }
        Ok(next)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    UnknownObject,
    SelfLaw,
    OrphanLocation,
    MissingLocation,
    SharedLocation,
    CarrierViolation,
    DanglingReference,
    AssocInconsistency,
    QualifierNotUnique,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::UnknownObject => "unknown object",
            ViolationKind::SelfLaw => "self law",
            ViolationKind::OrphanLocation => "orphan location",
            ViolationKind::MissingLocation => "missing location",
            ViolationKind::SharedLocation => "shared location",
            ViolationKind::CarrierViolation => "carrier violation",
            ViolationKind::DanglingReference => "dangling reference",
            ViolationKind::AssocInconsistency => "association inconsistency",
            ViolationKind::QualifierNotUnique => "qualifier not unique",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.label(), self.detail)
    }
}

/// Result of a well-formedness check. Warnings do not make a store invalid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "OK, 0 violations")?;
        } else {
            write!(f, "FAILED, {} violation(s)", self.violations.len())?;
        }
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        for w in &self.warnings {
            write!(f, "\n  warning: {w}")?;
        }
        Ok(())
    }
}

/// Checks every stated restriction on a store against its world.
pub fn check_store(world: &World, store: &Store) -> Report {
    let mut report = Report::default();
    let out = &mut report.violations;

    let mut owners: BTreeMap<Loc, Vec<String>> = BTreeMap::new();
    for oid in store.oids() {
        let Some(Value::Rec(fields)) = world.instance(oid) else {
            out.push(Violation::new(ViolationKind::UnknownObject, format!("{oid} is not allocated")));
            continue;
        };
        if fields.get(&Name::from(crate::classes::SELF)) != Some(&Value::Oid(oid.clone())) {
            out.push(Violation::new(ViolationKind::SelfLaw, format!("{oid}.self does not refer back to {oid}")));
        }
        let Ok(info) = world.class(&oid.class) else {
            out.push(Violation::new(ViolationKind::UnknownObject, format!("class of {oid} is undeclared")));
            continue;
        };
        for a in &info.attrs {
            match (&a.kind, fields.get(&a.name)) {
                (AttrKind::Mutable(_), Some(Value::Loc(l))) => {
                    owners.entry(*l).or_default().push(format!("{oid}.{}", a.name));
                }
                (AttrKind::PlainConst(t), Some(v)) => {
                    check_content(world, store, &format!("{oid}.{}", a.name), v, t, out);
                }
                _ => out.push(Violation::new(
                    ViolationKind::CarrierViolation,
                    format!("{oid}.{} does not match its declaration", a.name),
                )),
            }
        }
    }
    for (name, loc) in world.statics() {
        owners.entry(loc).or_default().push(format!("static {name}"));
    }

    for (loc, users) in &owners {
        if users.len() > 1 {
            out.push(Violation::new(
                ViolationKind::SharedLocation,
                format!("{loc} is used by {}", users.join(", ")),
            ));
        }
        if !store.mem.contains_key(loc) {
            out.push(Violation::new(
                ViolationKind::MissingLocation,
                format!("{loc} of {} has no content", users.join(", ")),
            ));
        }
    }
    for (loc, v) in store.mem.iter() {
        if !owners.contains_key(loc) {
            out.push(Violation::new(
                ViolationKind::OrphanLocation,
                format!("{loc} belongs to no existing object or static"),
            ));
        }
        match world.loc_type(*loc) {
            Some(t) => check_content(world, store, &loc.to_string(), v, t, out),
            None => out.push(Violation::new(
                ViolationKind::CarrierViolation,
                format!("{loc} has no registered content type"),
            )),
        }
    }

    report.violations.extend(check_assoc_consistency(world, store));
    for info in world.classes() {
        for a in &info.decl.attrs {
            if a.kind.is_mutable() && a.kind.content_type().contains_loc() {
                report.warnings.push(format!(
                    "{}.{} stores a location; objects can leak their state through it",
                    info.decl.name, a.name
                ));
            }
        }
    }
    report
}

fn check_content(
    world: &World,
    store: &Store,
    place: &str,
    v: &Value,
    ty: &crate::universe::TypeName,
    out: &mut Vec<Violation>,
) {
    if !in_carrier(v, ty, world).unwrap_or(false) {
        out.push(Violation::new(
            ViolationKind::CarrierViolation,
            format!("{place} holds {v}, not a member of {ty}"),
        ));
    }
    for o in v.referenced_oids() {
        if !store.contains(o) {
            out.push(Violation::new(
                ViolationKind::DanglingReference,
                format!("{place} refers to {o}, which does not exist"),
            ));
        }
    }
}
