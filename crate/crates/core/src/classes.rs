//! Classes, subclassing, object allocation and static attributes.
//!
//! [`World`] is the monotone registry behind the store: it records declared
//! classes and associations, every allocated object identifier with its
//! instance record, and the content type of every allocated location. It
//! is a persistent value; every operation returns a new world and leaves the
//! receiver untouched, so earlier snapshots stay valid.

use std::collections::{BTreeMap, BTreeSet};

use im::{OrdMap, Vector};

use crate::associations::AssocDecl;
use crate::datastore::Store;
use crate::error::{ModelError, Result};
use crate::universe::{carrier_violation, in_carrier, Loc, Name, Oid, TypeName, Value};

pub const SELF: &str = "self";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttrKind {
    /// Stored directly in the instance record, fixed at instantiation.
    PlainConst(TypeName),
    /// Stored in a location owned by the object.
    Mutable(TypeName),
}

impl AttrKind {
    pub fn content_type(&self) -> &TypeName {
        match self {
            AttrKind::PlainConst(t) | AttrKind::Mutable(t) => t,
        }
    }

    pub fn is_mutable(&self) -> bool {
        matches!(self, AttrKind::Mutable(_))
    }

    fn same_as(&self, other: &AttrKind) -> bool {
        self.is_mutable() == other.is_mutable()
            && self.content_type().canonicalize() == other.content_type().canonicalize()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttrDecl {
    pub name: Name,
    pub kind: AttrKind,
}

impl AttrDecl {
    pub fn mutable(name: impl Into<Name>, ty: TypeName) -> Self {
        AttrDecl {
            name: name.into(),
            kind: AttrKind::Mutable(ty),
        }
    }

    pub fn constant(name: impl Into<Name>, ty: TypeName) -> Self {
        AttrDecl {
            name: name.into(),
            kind: AttrKind::PlainConst(ty),
        }
    }
}

/// A class declaration.
///
/// `supers` are inheriting superclasses: their attributes are copied into
/// this class. `subclass_of` only adds `sub` edges and leaves the record
/// structure alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: Name,
    pub supers: Vec<Name>,
    pub subclass_of: Vec<Name>,
    pub attrs: Vec<AttrDecl>,
}

impl ClassDecl {
    pub fn new(name: impl Into<Name>) -> Self {
        ClassDecl {
            name: name.into(),
            supers: Vec::new(),
            subclass_of: Vec::new(),
            attrs: Vec::new(),
        }
    }

    pub fn extends(mut self, sup: impl Into<Name>) -> Self {
        self.supers.push(sup.into());
        self
    }

    pub fn subclass_of(mut self, sup: impl Into<Name>) -> Self {
        self.subclass_of.push(sup.into());
        self
    }

    pub fn attr(mut self, attr: AttrDecl) -> Self {
        self.attrs.push(attr);
        self
    }
}

/// An attribute as seen on a class after inheritance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveAttr {
    pub name: Name,
    pub kind: AttrKind,
    /// The class whose declaration introduced this attribute.
    pub origin: Name,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub decl: ClassDecl,
    /// Inherited attributes first, then own ones.
    pub attrs: Vec<EffectiveAttr>,
    /// Every class this one is a subclass of, itself included.
    pub ancestors: BTreeSet<Name>,
}

impl ClassInfo {
    pub fn attr(&self, name: &Name) -> Option<&EffectiveAttr> {
        self.attrs.iter().find(|a| a.name == *name)
    }

    /// The record type of this class's instances.
    pub fn record_type(&self) -> TypeName {
        let mut fields: BTreeMap<Name, TypeName> = self
            .attrs
            .iter()
            .map(|a| {
                let t = match &a.kind {
                    AttrKind::PlainConst(t) => t.clone(),
                    AttrKind::Mutable(t) => TypeName::loc(t.clone()),
                };
                (a.name.clone(), t)
            })
            .collect();
        fields.insert(Name::from(SELF), TypeName::Class(self.decl.name.clone()));
        TypeName::Rec(fields)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct World {
    strict: bool,
    classes: OrdMap<Name, ClassInfo>,
    class_order: Vector<Name>,
    objects: OrdMap<Oid, Value>,
    loc_types: OrdMap<Loc, TypeName>,
    statics: OrdMap<Name, Loc>,
    static_order: Vector<Name>,
    pub(crate) assocs: OrdMap<Name, AssocDecl>,
    pub(crate) assoc_order: Vector<Name>,
    next_serial: OrdMap<Name, u64>,
    next_loc: u64,
}

impl World {
    /// An empty world. With `strict_inheritance`, subclasses may not
    /// redefine inherited attributes and must carry every attribute of each
    /// superclass with an identical type.
    pub fn new(strict_inheritance: bool) -> Self {
        World {
            strict: strict_inheritance,
            ..World::default()
        }
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn has_class(&self, name: &Name) -> bool {
        self.classes.contains_key(name)
    }

    pub fn class(&self, name: &Name) -> Result<&ClassInfo> {
        self.classes
            .get(name)
            .ok_or_else(|| ModelError::UnknownClass(name.clone()))
    }

    /// Classes in declaration order.
    pub fn classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.class_order.iter().map(move |n| &self.classes[n])
    }

    /// `sub` on declared classes; false if either is undeclared.
    pub fn is_subclass(&self, c1: &Name, c2: &Name) -> bool {
        self.classes
            .get(c1)
            .is_some_and(|info| info.ancestors.contains(c2))
    }

    pub fn sub_class_of(&self, c1: &Name, c2: &Name) -> Result<bool> {
        let info = self.class(c1)?;
        self.class(c2)?;
        Ok(info.ancestors.contains(c2))
    }

    pub fn is_allocated(&self, oid: &Oid) -> bool {
        self.objects.contains_key(oid)
    }

    pub fn class_of<'a>(&self, oid: &'a Oid) -> Option<&'a Name> {
        self.is_allocated(oid).then_some(&oid.class)
    }

    pub fn instance(&self, oid: &Oid) -> Option<&Value> {
        self.objects.get(oid)
    }

    /// All allocated objects with their instance records.
    pub fn objects(&self) -> impl Iterator<Item = (&Oid, &Value)> {
        self.objects.iter()
    }

    pub fn loc_type(&self, loc: Loc) -> Option<&TypeName> {
        self.loc_types.get(&loc)
    }

    pub fn locations(&self) -> impl Iterator<Item = (&Loc, &TypeName)> {
        self.loc_types.iter()
    }

    pub fn static_loc(&self, name: &Name) -> Option<Loc> {
        self.statics.get(name).copied()
    }

    /// Static attributes in declaration order.
    pub fn statics(&self) -> impl Iterator<Item = (&Name, Loc)> {
        self.static_order.iter().map(move |n| (n, self.statics[n]))
    }

    /// The `(attribute, location)` pairs of an object's mutable attributes.
    pub fn object_locations(&self, oid: &Oid) -> Result<Vec<(Name, Loc)>> {
        let Some(Value::Rec(fields)) = self.objects.get(oid) else {
            return Err(ModelError::UnknownOid(oid.clone()));
        };
        let info = self.class(&oid.class)?;
        Ok(info
            .attrs
            .iter()
            .filter(|a| a.kind.is_mutable())
            .filter_map(|a| fields.get(&a.name)?.as_loc().map(|l| (a.name.clone(), l)))
            .collect())
    }

    pub fn declare_class(&self, decl: ClassDecl) -> Result<World> {
        let name = decl.name.clone();
        if self.has_class(&name) {
            return Err(ModelError::DuplicateClass(name));
        }
        let parents = decl.supers.iter().chain(&decl.subclass_of);
        for p in parents.clone() {
            if *p == name {
                return Err(ModelError::InheritanceCycle(name));
            }
            if !self.has_class(p) {
                return Err(ModelError::UnknownSuper(p.clone()));
            }
        }

        let mut own = BTreeSet::new();
        for a in &decl.attrs {
            if a.name.as_str() == SELF {
                return Err(ModelError::ReservedName(a.name.clone()));
            }
            if !own.insert(&a.name) {
                return Err(ModelError::DuplicateField(a.name.clone()));
            }
            let ty = a.kind.content_type();
            if !a.kind.is_mutable() && ty.contains_loc() {
                return Err(ModelError::PlainLocation {
                    class: name.clone(),
                    attr: a.name.clone(),
                });
            }
        }
        check_basic_names(&decl)?;

        let mut attrs: Vec<EffectiveAttr> = Vec::new();
        for sup in &decl.supers {
            for inherited in &self.classes[sup].attrs {
                match attrs.iter().find(|a| a.name == inherited.name) {
                    Some(existing) if existing.origin == inherited.origin => {}
                    Some(existing) => {
                        return Err(ModelError::NameConflict {
                            class: name.clone(),
                            attr: inherited.name.clone(),
                            first: existing.origin.clone(),
                            second: inherited.origin.clone(),
                        })
                    }
                    None => attrs.push(inherited.clone()),
                }
            }
        }
        for a in &decl.attrs {
            let fresh = EffectiveAttr {
                name: a.name.clone(),
                kind: a.kind.clone(),
                origin: name.clone(),
            };
            match attrs.iter_mut().find(|e| e.name == a.name) {
                Some(_) if self.strict => {
                    return Err(ModelError::StrictRedefinition {
                        class: name.clone(),
                        attr: a.name.clone(),
                        reason: "redeclares an inherited attribute",
                    })
                }
                Some(slot) => *slot = fresh,
                None => attrs.push(fresh),
            }
        }
        if self.strict {
            for sup in &decl.subclass_of {
                for required in &self.classes[sup].attrs {
                    let ok = attrs
                        .iter()
                        .any(|a| a.name == required.name && a.kind.same_as(&required.kind));
                    if !ok {
                        return Err(ModelError::StrictRedefinition {
                            class: name.clone(),
                            attr: required.name.clone(),
                            reason: "is missing or differs from the superclass",
                        });
                    }
                }
            }
        }

        let mut ancestors: BTreeSet<Name> = parents
            .flat_map(|p| self.classes[p].ancestors.iter().cloned())
            .collect();
        ancestors.insert(name.clone());

        let mut world = self.clone();
        world.class_order.push_back(name.clone());
        world.classes.insert(
            name,
            ClassInfo {
                decl,
                attrs,
                ancestors,
            },
        );
        Ok(world)
    }

    /// Attribute types that mention classes not declared (yet), as
    /// `(class, attribute, missing class)`. Attribute types may refer
    /// forward so that classes can point at each other.
    pub fn unresolved_types(&self) -> Vec<(Name, Name, Name)> {
        let mut out = Vec::new();
        for info in self.classes() {
            for a in &info.decl.attrs {
                for c in a.kind.content_type().class_names() {
                    if !self.has_class(&c) {
                        out.push((info.decl.name.clone(), a.name.clone(), c));
                    }
                }
            }
        }
        out
    }

    fn fresh_loc(&mut self, content: TypeName) -> Loc {
        self.next_loc += 1;
        let loc = Loc(self.next_loc);
        self.loc_types.insert(loc, content);
        loc
    }

    /// Checks that `v` may be written where content of type `ty` is expected
    /// in `store`: carrier membership, and no reference to an object that
    /// does not exist there.
    pub(crate) fn check_storable(&self, store: &Store, v: &Value, ty: &TypeName) -> Result<()> {
        if !in_carrier(v, ty, self)? {
            return Err(carrier_violation(v, ty));
        }
        match v.referenced_oids().into_iter().find(|o| !store.contains(o)) {
            Some(o) => Err(ModelError::UnknownOid(o.clone())),
            None => Ok(()),
        }
    }

    /// Allocates a fresh object of `class`, one fresh location per mutable
    /// attribute, and adds the object to the store.
    pub fn instantiate(
        &self,
        store: &Store,
        class: &Name,
        init: &BTreeMap<Name, Value>,
    ) -> Result<(World, Store, Oid)> {
        let info = self.class(class)?;
        if let Some(extra) = init.keys().find(|k| info.attr(k).is_none()) {
            return Err(ModelError::NoSuchAttr {
                class: class.clone(),
                attr: extra.clone(),
            });
        }
        for a in &info.attrs {
            let v = init.get(&a.name).ok_or_else(|| ModelError::MissingInit {
                class: class.clone(),
                attr: a.name.clone(),
            })?;
            self.check_storable(store, v, a.kind.content_type())?;
        }

        let mut world = self.clone();
        let serial = world.next_serial.get(class).copied().unwrap_or(0) + 1;
        world.next_serial.insert(class.clone(), serial);
        let oid = Oid {
            class: class.clone(),
            serial,
        };
        let mut record = BTreeMap::new();
        record.insert(Name::from(SELF), Value::Oid(oid.clone()));
        let mut contents = BTreeMap::new();
        for a in &info.attrs {
            let v = init[&a.name].clone();
            match &a.kind {
                AttrKind::PlainConst(_) => {
                    record.insert(a.name.clone(), v);
                }
                AttrKind::Mutable(t) => {
                    let loc = world.fresh_loc(t.clone());
                    record.insert(a.name.clone(), Value::Loc(loc));
                    contents.insert(loc, v);
                }
            }
        }
        world.objects.insert(oid.clone(), Value::Rec(record));
        let store = store.addobj(&world, &oid, &contents)?;
        Ok((world, store, oid))
    }

    /// Declares a static attribute: a location that belongs to no object.
    pub fn declare_static_attr(
        &self,
        store: &Store,
        name: &Name,
        ty: &TypeName,
        init: &Value,
    ) -> Result<(World, Store)> {
        if self.statics.contains_key(name) {
            return Err(ModelError::DuplicateStatic(name.clone()));
        }
        self.check_storable(store, init, ty)?;
        let mut world = self.clone();
        let loc = world.fresh_loc(ty.clone());
        world.statics.insert(name.clone(), loc);
        world.static_order.push_back(name.clone());
        let store = store.insert_location(loc, init.clone());
        Ok((world, store))
    }
}

fn check_basic_names(decl: &ClassDecl) -> Result<()> {
    for a in &decl.attrs {
        strip_classes(a.kind.content_type()).check_well_formed(&World::default())?;
    }
    Ok(())
}

/// Replaces class names by `Int` so basic names can be checked without a
/// world that knows the class under declaration.
fn strip_classes(t: &TypeName) -> TypeName {
    match t {
        TypeName::Class(_) | TypeName::Oid(_) => TypeName::int(),
        TypeName::Basic(_) => t.clone(),
        TypeName::Ref(x) => TypeName::reference(strip_classes(x)),
        TypeName::Loc(x) => TypeName::loc(strip_classes(x)),
        TypeName::Set(x) => TypeName::set(strip_classes(x)),
        TypeName::List(x) => TypeName::list(strip_classes(x)),
        TypeName::Rec(fs) => TypeName::Rec(fs.iter().map(|(n, x)| (n.clone(), strip_classes(x))).collect()),
        TypeName::Prod(xs) => TypeName::Prod(xs.iter().map(strip_classes).collect()),
    }
}
