//! Record and product construction, attribute extraction, projection and
//! dereferencing.

use std::collections::{BTreeMap, BTreeSet};

use crate::classes::World;
use crate::error::{ModelError, Result};
use crate::universe::{Name, TypeName, Value};

/// Ordered `(name, type)` pairs with pairwise distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldList {
    entries: Vec<(Name, TypeName)>,
}

impl FieldList {
    pub fn new(entries: Vec<(Name, TypeName)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (n, _) in &entries {
            if !seen.insert(n) {
                return Err(ModelError::DuplicateField(n.clone()));
            }
        }
        Ok(FieldList { entries })
    }

    pub fn entries(&self) -> &[(Name, TypeName)] {
        &self.entries
    }
}

/// Builds the record type over `fields`. The result does not depend on the
/// order in which the fields are listed.
pub fn mk_rec(fields: impl IntoIterator<Item = (Name, TypeName)>) -> Result<TypeName> {
    let mut out = BTreeMap::new();
    for (n, t) in fields {
        if out.insert(n.clone(), t).is_some() {
            return Err(ModelError::DuplicateField(n));
        }
    }
    Ok(TypeName::Rec(out))
}

pub fn mk_rec_from(fields: &FieldList) -> TypeName {
    TypeName::Rec(fields.entries.iter().cloned().collect())
}

/// Attribute names of a record type, looking through references.
pub fn attr_of(ty: &TypeName) -> BTreeSet<Name> {
    match ty {
        TypeName::Rec(fields) => fields.keys().cloned().collect(),
        TypeName::Ref(t) => attr_of(t),
        _ => BTreeSet::new(),
    }
}

/// The instance record an object identifier refers to.
pub fn deref<'w>(r: &Value, world: &'w World) -> Result<&'w Value> {
    match r {
        Value::Nil => Err(ModelError::NilDereference),
        Value::Oid(o) => world.instance(o).ok_or_else(|| ModelError::UnknownOid(o.clone())),
        other => Err(ModelError::WrongValueKind {
            expected: "reference",
            found: other.to_string(),
        }),
    }
}

/// Field `a` of a record, or of the record an object identifier refers to.
///
/// For a mutable attribute this yields the location, not its content.
pub fn proj(v: &Value, a: &Name, world: &World) -> Result<Value> {
    let record = match v {
        Value::Rec(_) => v,
        Value::Nil | Value::Oid(_) => deref(v, world)?,
        other => {
            return Err(ModelError::WrongValueKind {
                expected: "record or reference",
                found: other.to_string(),
            })
        }
    };
    match record {
        Value::Rec(fields) => fields
            .get(a)
            .cloned()
            .ok_or_else(|| ModelError::NoSuchField(a.clone())),
        _ => unreachable!("instance records are records"),
    }
}

/// `[a1=v1, ..., an=vn]` from names and a tuple of equal length.
pub fn rec_from_tuple(names: &[Name], tuple: &Value) -> Result<Value> {
    let Value::Tuple(vs) = tuple else {
        return Err(ModelError::WrongValueKind {
            expected: "tuple",
            found: tuple.to_string(),
        });
    };
    if names.len() != vs.len() {
        return Err(ModelError::ArityMismatch {
            expected: names.len(),
            found: vs.len(),
        });
    }
    let mut out = BTreeMap::new();
    for (n, v) in names.iter().zip(vs) {
        if out.insert(n.clone(), v.clone()).is_some() {
            return Err(ModelError::DuplicateField(n.clone()));
        }
    }
    Ok(Value::Rec(out))
}

/// The tuple of a record's fields in the order given by `names`.
pub fn tuple_from_rec(names: &[Name], record: &Value) -> Result<Value> {
    let Value::Rec(fields) = record else {
        return Err(ModelError::WrongValueKind {
            expected: "record",
            found: record.to_string(),
        });
    };
    let distinct: BTreeSet<&Name> = names.iter().collect();
    if distinct.len() != names.len()
        || distinct.len() != fields.len()
        || !distinct.iter().all(|n| fields.contains_key(*n))
    {
        return Err(ModelError::FieldSetMismatch);
    }
    Ok(Value::Tuple(names.iter().map(|n| fields[n].clone()).collect()))
}
