//! Names, type names, values and the carrier-membership judgment.
//!
//! Carrier sets are never enumerated: `CAR(Int)` alone is infinite. Instead
//! [`in_carrier`] decides whether a value belongs to the carrier of a type
//! name, consulting the [`World`] for everything that depends on declared
//! classes and allocated locations.
//!
//! Basic carriers are pairwise disjoint. `Bool` is an alias of `Boolean`.
//! A single [`Value::Nil`] belongs to every reference carrier.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::classes::World;
use crate::error::{ModelError, Result};

/// An identifier: non-empty, `[A-Za-z_][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(token: &str) -> Result<Name> {
        if is_identifier(token) {
            Ok(Name(Arc::from(token)))
        } else {
            Err(ModelError::InvalidName(token.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Panics on a token that is not an identifier; meant for literals in code.
impl From<&str> for Name {
    fn from(token: &str) -> Self {
        Name::new(token).unwrap_or_else(|_| panic!("invalid name {token:?}"))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Object identifier. The class is part of the identifier, so `classOf` is
/// a projection and the per-class carriers are disjoint by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Oid {
    pub class: Name,
    pub serial: u64,
}

impl fmt::Display for Oid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.class, self.serial)
    }
}

impl fmt::Debug for Oid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Location identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc(pub u64);

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "loc#{}", self.0)
    }
}

impl fmt::Debug for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub const INT: &str = "Int";
pub const BOOLEAN: &str = "Boolean";
pub const VOID: &str = "Void";

/// Canonical spelling of a basic type name, or `None` if it is not one.
fn canonical_basic(name: &str) -> Option<&'static str> {
    match name {
        "Int" => Some(INT),
        "Boolean" | "Bool" => Some(BOOLEAN),
        "Void" => Some(VOID),
        _ => None,
    }
}

/// A type name: a symbolic tree naming a carrier set.
///
/// `Rec` keeps its fields in a sorted map, so record types built from the
/// same fields in any order are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeName {
    Basic(Name),
    /// Identifiers of objects whose class is exactly this one.
    Class(Name),
    Ref(Box<TypeName>),
    Rec(BTreeMap<Name, TypeName>),
    Prod(Vec<TypeName>),
    Loc(Box<TypeName>),
    /// Identifiers of objects of this class or any subclass.
    Oid(Name),
    Set(Box<TypeName>),
    List(Box<TypeName>),
}

impl TypeName {
    pub fn int() -> Self {
        TypeName::Basic(Name::from(INT))
    }

    pub fn boolean() -> Self {
        TypeName::Basic(Name::from(BOOLEAN))
    }

    pub fn void() -> Self {
        TypeName::Basic(Name::from(VOID))
    }

    pub fn reference(t: TypeName) -> Self {
        TypeName::Ref(Box::new(t))
    }

    pub fn loc(t: TypeName) -> Self {
        TypeName::Loc(Box::new(t))
    }

    pub fn set(t: TypeName) -> Self {
        TypeName::Set(Box::new(t))
    }

    pub fn list(t: TypeName) -> Self {
        TypeName::List(Box::new(t))
    }

    pub fn oid(class: impl Into<Name>) -> Self {
        TypeName::Oid(class.into())
    }

    /// Alias-free form. Two type names are equivalent iff their canonical
    /// forms are equal.
    pub fn canonicalize(&self) -> TypeName {
        match self {
            TypeName::Basic(n) => match canonical_basic(n.as_str()) {
                Some(c) => TypeName::Basic(Name::from(c)),
                None => self.clone(),
            },
            TypeName::Class(_) | TypeName::Oid(_) => self.clone(),
            TypeName::Ref(t) => TypeName::reference(t.canonicalize()),
            TypeName::Rec(fields) => TypeName::Rec(
                fields
                    .iter()
                    .map(|(n, t)| (n.clone(), t.canonicalize()))
                    .collect(),
            ),
            TypeName::Prod(ts) => TypeName::Prod(ts.iter().map(TypeName::canonicalize).collect()),
            TypeName::Loc(t) => TypeName::loc(t.canonicalize()),
            TypeName::Set(t) => TypeName::set(t.canonicalize()),
            TypeName::List(t) => TypeName::list(t.canonicalize()),
        }
    }

    /// Class names mentioned anywhere in the tree.
    pub fn class_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_class_names(&mut out);
        out
    }

    fn collect_class_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            TypeName::Basic(_) => {}
            TypeName::Class(c) | TypeName::Oid(c) => {
                out.insert(c.clone());
            }
            TypeName::Ref(t) | TypeName::Loc(t) | TypeName::Set(t) | TypeName::List(t) => {
                t.collect_class_names(out)
            }
            TypeName::Rec(fields) => fields.values().for_each(|t| t.collect_class_names(out)),
            TypeName::Prod(ts) => ts.iter().for_each(|t| t.collect_class_names(out)),
        }
    }

    pub fn contains_loc(&self) -> bool {
        match self {
            TypeName::Loc(_) => true,
            TypeName::Basic(_) | TypeName::Class(_) | TypeName::Oid(_) => false,
            TypeName::Ref(t) | TypeName::Set(t) | TypeName::List(t) => t.contains_loc(),
            TypeName::Rec(fields) => fields.values().any(TypeName::contains_loc),
            TypeName::Prod(ts) => ts.iter().any(TypeName::contains_loc),
        }
    }

    /// Checks basic names and that every class name is declared.
    pub fn check_well_formed(&self, world: &World) -> Result<()> {
        self.check_basic_names()?;
        for c in self.class_names() {
            if !world.has_class(&c) {
                return Err(ModelError::MalformedType(format!("undeclared class `{c}` in {self}")));
            }
        }
        Ok(())
    }

    fn check_basic_names(&self) -> Result<()> {
        match self {
            TypeName::Basic(n) if canonical_basic(n.as_str()).is_none() => Err(
                ModelError::MalformedType(format!("`{n}` is not a basic type")),
            ),
            TypeName::Basic(_) | TypeName::Class(_) | TypeName::Oid(_) => Ok(()),
            TypeName::Ref(t) | TypeName::Loc(t) | TypeName::Set(t) | TypeName::List(t) => {
                t.check_basic_names()
            }
            TypeName::Rec(fields) => fields.values().try_for_each(TypeName::check_basic_names),
            TypeName::Prod(ts) => ts.iter().try_for_each(TypeName::check_basic_names),
        }
    }
}

/// Renders in the surface syntax of the model language.
impl fmt::Display for TypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeName::Basic(n) => match canonical_basic(n.as_str()) {
                Some(BOOLEAN) => f.write_str("Bool"),
                _ => write!(f, "{n}"),
            },
            TypeName::Class(c) => write!(f, "Class({c})"),
            TypeName::Oid(c) => write!(f, "{c}"),
            TypeName::Ref(t) => write!(f, "Ref {t}"),
            TypeName::Rec(fields) => {
                f.write_str("Rec{")?;
                for (i, (n, t)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}: {t}")?;
                }
                f.write_str("}")
            }
            TypeName::Prod(ts) => {
                f.write_str("Prod(")?;
                write_joined(f, ts)?;
                f.write_str(")")
            }
            TypeName::Loc(t) => write!(f, "Loc({t})"),
            TypeName::Set(t) => write!(f, "Set({t})"),
            TypeName::List(t) => write!(f, "List({t})"),
        }
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A member of the value universe.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Void,
    Nil,
    Oid(Oid),
    Loc(Loc),
    Rec(BTreeMap<Name, Value>),
    Tuple(Vec<Value>),
    Set(BTreeSet<Value>),
    List(Vec<Value>),
    /// Some member of the carrier of this type, identity not known.
    Unknown(TypeName),
}

impl Value {
    pub fn as_oid(&self) -> Option<&Oid> {
        match self {
            Value::Oid(o) => Some(o),
            _ => None,
        }
    }

    pub fn as_loc(&self) -> Option<Loc> {
        match self {
            Value::Loc(l) => Some(*l),
            _ => None,
        }
    }

    /// Object identifiers occurring anywhere inside this value.
    pub fn referenced_oids(&self) -> Vec<&Oid> {
        let mut out = Vec::new();
        self.collect_oids(&mut out);
        out
    }

    fn collect_oids<'a>(&'a self, out: &mut Vec<&'a Oid>) {
        match self {
            Value::Oid(o) => out.push(o),
            Value::Rec(fields) => fields.values().for_each(|v| v.collect_oids(out)),
            Value::Tuple(vs) | Value::List(vs) => vs.iter().for_each(|v| v.collect_oids(out)),
            Value::Set(vs) => vs.iter().for_each(|v| v.collect_oids(out)),
            _ => {}
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(z) => write!(f, "{z}"),
            Value::Void => f.write_str("void"),
            Value::Nil => f.write_str("nil"),
            Value::Oid(o) => write!(f, "{o}"),
            Value::Loc(l) => write!(f, "{l}"),
            Value::Rec(fields) => {
                f.write_str("rec{")?;
                for (i, (n, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}={v}")?;
                }
                f.write_str("}")
            }
            Value::Tuple(vs) => {
                f.write_str("(")?;
                write_joined(f, vs)?;
                f.write_str(")")
            }
            Value::Set(vs) => {
                f.write_str("{")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            Value::List(vs) => {
                f.write_str("[")?;
                write_joined(f, vs)?;
                f.write_str("]")
            }
            Value::Unknown(_) => f.write_str("unknown"),
        }
    }
}

/// A value together with a type name whose carrier contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedElement {
    ty: TypeName,
    value: Value,
}

impl TypedElement {
    pub fn new(value: Value, ty: TypeName, world: &World) -> Result<Self> {
        if in_carrier(&value, &ty, world)? {
            Ok(TypedElement { ty, value })
        } else {
            Err(carrier_violation(&value, &ty))
        }
    }

    pub fn ty(&self) -> &TypeName {
        &self.ty
    }

    pub fn value(&self) -> &Value {
        &self.value
    }
}

pub(crate) fn carrier_violation(value: &Value, ty: &TypeName) -> ModelError {
    ModelError::CarrierViolation {
        value: value.to_string(),
        ty: ty.to_string(),
    }
}

/// Decides `v ∈ CAR(ty)`.
///
/// Fails with `MalformedType` when `ty` names an undeclared class or an
/// unknown basic type.
pub fn in_carrier(v: &Value, ty: &TypeName, world: &World) -> Result<bool> {
    ty.check_well_formed(world)?;
    Ok(member(v, &ty.canonicalize(), world))
}

/// Membership against an already canonical, well-formed type.
fn member(v: &Value, ty: &TypeName, world: &World) -> bool {
    if let Value::Unknown(t) = v {
        return t.canonicalize() == *ty;
    }
    match ty {
        TypeName::Basic(n) => matches!(
            (n.as_str(), v),
            (INT, Value::Int(_)) | (BOOLEAN, Value::Bool(_)) | (VOID, Value::Void)
        ),
        // A class name denotes a reference type, so nil belongs to it.
        TypeName::Class(c) => match v {
            Value::Nil => true,
            Value::Oid(o) => world.is_allocated(o) && o.class == *c,
            _ => false,
        },
        TypeName::Oid(c) => match v {
            Value::Nil => true,
            Value::Oid(o) => world.is_allocated(o) && world.is_subclass(&o.class, c),
            _ => false,
        },
        TypeName::Ref(_) => matches!(v, Value::Nil),
        TypeName::Rec(fields) => match v {
            Value::Rec(r) => {
                r.len() == fields.len()
                    && fields
                        .iter()
                        .all(|(n, t)| r.get(n).is_some_and(|x| member(x, t, world)))
            }
            _ => false,
        },
        TypeName::Prod(ts) => match v {
            Value::Tuple(vs) => {
                vs.len() == ts.len() && vs.iter().zip(ts).all(|(x, t)| member(x, t, world))
            }
            _ => false,
        },
        TypeName::Loc(t) => match v {
            Value::Loc(l) => world
                .loc_type(*l)
                .is_some_and(|content| content.canonicalize() == **t),
            _ => false,
        },
        TypeName::Set(t) => match v {
            Value::Set(vs) => vs.iter().all(|x| member(x, t, world)),
            _ => false,
        },
        TypeName::List(t) => match v {
            Value::List(vs) => vs.iter().all(|x| member(x, t, world)),
            _ => false,
        },
    }
}

/// Type equivalence: equal carriers, decided on canonical forms.
pub fn types_equivalent(t1: &TypeName, t2: &TypeName) -> bool {
    t1.canonicalize() == t2.canonicalize()
}

/// The most specific type of a value, when it has one. `Nil` has none, and
/// neither does a collection whose elements do not share a type.
pub fn type_of(v: &Value, world: &World) -> Option<TypeName> {
    match v {
        Value::Bool(_) => Some(TypeName::boolean()),
        Value::Int(_) => Some(TypeName::int()),
        Value::Void => Some(TypeName::void()),
        Value::Nil => None,
        Value::Oid(o) => world.is_allocated(o).then(|| TypeName::Class(o.class.clone())),
        Value::Loc(l) => world.loc_type(*l).map(|t| TypeName::loc(t.clone())),
        Value::Rec(fields) => fields
            .iter()
            .map(|(n, x)| type_of(x, world).map(|t| (n.clone(), t)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(TypeName::Rec),
        Value::Tuple(vs) => vs
            .iter()
            .map(|x| type_of(x, world))
            .collect::<Option<Vec<_>>>()
            .map(TypeName::Prod),
        Value::Set(vs) => common_type(vs.iter(), world).map(TypeName::set),
        Value::List(vs) => common_type(vs.iter(), world).map(TypeName::list),
        Value::Unknown(t) => Some(t.clone()),
    }
}

fn common_type<'a>(mut vs: impl Iterator<Item = &'a Value>, world: &World) -> Option<TypeName> {
    let first = type_of(vs.next()?, world)?;
    for v in vs {
        if type_of(v, world)? != first {
            return None;
        }
    }
    Some(first)
}
