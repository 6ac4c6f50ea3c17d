//! Associations and their retrieval functions.
//!
//! An association is never stored as such. It is realized by objects and
//! locations according to a [`Strategy`], and [`rel_of`] recovers the
//! current set of links from a store snapshot. Links are tuples
//! `(oid_1, ..., oid_n, extra_1, ..., extra_k)`; an object takes part in a
//! link at position `i` whenever its class is a subclass of `C_i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::classes::{AttrKind, World};
use crate::datastore::{Store, Violation, ViolationKind};
use crate::error::{ModelError, Result};
use crate::universe::{carrier_violation, in_carrier, types_equivalent, Name, Oid, TypeName, Value};

/// How an association is encoded in objects and locations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// A mutable to-1 attribute on one side points at the other side.
    AttributeOwned { owner_index: usize, attr: Name },
    /// Each link is an instance of a separate class whose role attributes
    /// point at the participants. Supports any arity and extra attributes.
    Mediator {
        class: Name,
        role_attrs: Vec<Name>,
        extra_attrs: Vec<Name>,
    },
    /// `C_1.direct_attr` points at a `C_2` object and `C_2.collection_attr`
    /// holds the set of `C_1` objects pointing at it. Both must agree.
    RedundantHybrid {
        direct_attr: Name,
        collection_attr: Name,
    },
    /// The owner holds an ordered list of targets; duplicates are links
    /// made several times.
    Ordered { owner_index: usize, list_attr: Name },
    /// A mediator class carrying a qualifier that identifies at most one
    /// target per source.
    Qualified {
        class: Name,
        role_attrs: Vec<Name>,
        qualifier_attr: Name,
        qualifier_type: TypeName,
    },
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::AttributeOwned { .. } => "attribute",
            Strategy::Mediator { .. } => "mediator",
            Strategy::RedundantHybrid { .. } => "redundant",
            Strategy::Ordered { .. } => "ordered",
            Strategy::Qualified { .. } => "qualified",
        }
    }

    /// A mediator whose first `arity` attributes are the roles and whose
    /// remaining attributes are the extra attributes of the association.
    pub fn mediator_by_position(world: &World, assoc: &Name, class: &Name, arity: usize) -> Result<Strategy> {
        let names: Vec<Name> = world.class(class)?.attrs.iter().map(|a| a.name.clone()).collect();
        if names.len() < arity {
            return Err(shape_err(assoc, format!("mediator class `{class}` has fewer than {arity} attributes")));
        }
        let (roles, extras) = names.split_at(arity);
        Ok(Strategy::Mediator {
            class: class.clone(),
            role_attrs: roles.to_vec(),
            extra_attrs: extras.to_vec(),
        })
    }

    /// A qualified mediator whose first two attributes are the roles and
    /// whose third is the qualifier.
    pub fn qualified_by_position(world: &World, assoc: &Name, class: &Name, qualifier_type: TypeName) -> Result<Strategy> {
        let names: Vec<Name> = world.class(class)?.attrs.iter().map(|a| a.name.clone()).collect();
        if names.len() != 3 {
            return Err(shape_err(assoc, format!("qualifier class `{class}` needs two roles and a qualifier")));
        }
        Ok(Strategy::Qualified {
            class: class.clone(),
            role_attrs: names[..2].to_vec(),
            qualifier_attr: names[2].clone(),
            qualifier_type,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocDecl {
    pub name: Name,
    pub signature: Vec<Name>,
    /// Types of the extra link components. Derived from the strategy when
    /// the association is declared.
    pub extra_types: Vec<TypeName>,
    pub strategy: Strategy,
}

impl AssocDecl {
    pub fn new(name: impl Into<Name>, signature: Vec<Name>, strategy: Strategy) -> Self {
        AssocDecl {
            name: name.into(),
            signature,
            extra_types: Vec::new(),
            strategy,
        }
    }

    pub fn arity(&self) -> usize {
        self.signature.len()
    }
}

/// A link set: each tuple lists the participants, then the extra values.
pub type Links = BTreeSet<Vec<Value>>;

/// Whether values of content type `ty` are identifiers of `target` objects.
fn refers_to(world: &World, ty: &TypeName, target: &Name) -> bool {
    match ty {
        TypeName::Oid(c) | TypeName::Class(c) => world.is_subclass(c, target),
        _ => false,
    }
}

fn shape_err(assoc: &Name, reason: impl Into<String>) -> ModelError {
    ModelError::StrategyShapeMismatch {
        assoc: assoc.clone(),
        reason: reason.into(),
    }
}

fn attr_kind(world: &World, assoc: &Name, class: &Name, attr: &Name) -> Result<AttrKind> {
    world
        .class(class)?
        .attr(attr)
        .map(|a| a.kind.clone())
        .ok_or_else(|| shape_err(assoc, format!("class `{class}` has no attribute `{attr}`")))
}

fn mutable_content(world: &World, assoc: &Name, class: &Name, attr: &Name) -> Result<TypeName> {
    match attr_kind(world, assoc, class, attr)? {
        AttrKind::Mutable(t) => Ok(t),
        AttrKind::PlainConst(_) => Err(shape_err(assoc, format!("`{class}.{attr}` must be a location attribute"))),
    }
}

fn require_binary(decl: &AssocDecl) -> Result<()> {
    if decl.arity() != 2 {
        return Err(shape_err(
            &decl.name,
            format!("{} realization needs exactly two classes", decl.strategy.label()),
        ));
    }
    Ok(())
}

fn check_roles(world: &World, decl: &AssocDecl, class: &Name, roles: &[Name]) -> Result<()> {
    if roles.len() != decl.arity() {
        return Err(shape_err(&decl.name, format!("{} role attributes for arity {}", roles.len(), decl.arity())));
    }
    for (role, target) in roles.iter().zip(&decl.signature) {
        let kind = attr_kind(world, &decl.name, class, role)?;
        if !refers_to(world, kind.content_type(), target) {
            return Err(shape_err(&decl.name, format!("`{class}.{role}` does not refer to `{target}`")));
        }
    }
    Ok(())
}

/// The extra-attribute types implied by the strategy, after shape checks.
fn validate(world: &World, decl: &AssocDecl) -> Result<Vec<TypeName>> {
    let name = &decl.name;
    for c in &decl.signature {
        world.class(c)?;
    }
    if decl.arity() < 2 {
        return Err(shape_err(name, "an association relates at least two classes"));
    }
    match &decl.strategy {
        Strategy::AttributeOwned { owner_index, attr } => {
            require_binary(decl)?;
            if *owner_index > 1 {
                return Err(shape_err(name, "owner index out of range"));
            }
            let owner = &decl.signature[*owner_index];
            let other = &decl.signature[1 - owner_index];
            let t = mutable_content(world, name, owner, attr)?;
            if !refers_to(world, &t, other) {
                return Err(shape_err(name, format!("`{owner}.{attr}` does not refer to `{other}`")));
            }
            Ok(Vec::new())
        }
        Strategy::Mediator {
            class,
            role_attrs,
            extra_attrs,
        } => {
            check_roles(world, decl, class, role_attrs)?;
            let mut seen: BTreeSet<&Name> = role_attrs.iter().collect();
            if seen.len() != role_attrs.len() {
                return Err(shape_err(name, "role attributes must be distinct"));
            }
            extra_attrs
                .iter()
                .map(|a| {
                    if !seen.insert(a) {
                        return Err(shape_err(name, format!("attribute `{a}` used twice")));
                    }
                    Ok(attr_kind(world, name, class, a)?.content_type().clone())
                })
                .collect()
        }
        Strategy::RedundantHybrid {
            direct_attr,
            collection_attr,
        } => {
            require_binary(decl)?;
            let (a, b) = (&decl.signature[0], &decl.signature[1]);
            let direct = mutable_content(world, name, a, direct_attr)?;
            if !refers_to(world, &direct, b) {
                return Err(shape_err(name, format!("`{a}.{direct_attr}` does not refer to `{b}`")));
            }
            match mutable_content(world, name, b, collection_attr)? {
                TypeName::Set(elem) if refers_to(world, &elem, a) => Ok(Vec::new()),
                _ => Err(shape_err(name, format!("`{b}.{collection_attr}` must be a set of `{a}`"))),
            }
        }
        Strategy::Ordered {
            owner_index,
            list_attr,
        } => {
            require_binary(decl)?;
            if *owner_index > 1 {
                return Err(shape_err(name, "owner index out of range"));
            }
            let owner = &decl.signature[*owner_index];
            let other = &decl.signature[1 - owner_index];
            match mutable_content(world, name, owner, list_attr)? {
                TypeName::List(elem) if refers_to(world, &elem, other) => Ok(Vec::new()),
                _ => Err(shape_err(name, format!("`{owner}.{list_attr}` must be a list of `{other}`"))),
            }
        }
        Strategy::Qualified {
            class,
            role_attrs,
            qualifier_attr,
            qualifier_type,
        } => {
            require_binary(decl)?;
            check_roles(world, decl, class, role_attrs)?;
            qualifier_type
                .check_well_formed(world)
                .map_err(|e| shape_err(name, e.to_string()))?;
            let q = attr_kind(world, name, class, qualifier_attr)?;
            if role_attrs.contains(qualifier_attr) || !types_equivalent(q.content_type(), qualifier_type) {
                return Err(shape_err(name, format!("`{class}.{qualifier_attr}` is not a {qualifier_type} qualifier")));
            }
            Ok(vec![qualifier_type.clone()])
        }
    }
}

impl World {
    pub fn declare_assoc(&self, mut decl: AssocDecl) -> Result<World> {
        if self.assocs.contains_key(&decl.name) {
            return Err(ModelError::DuplicateAssoc(decl.name));
        }
        let extras = validate(self, &decl)?;
        if !decl.extra_types.is_empty()
            && (decl.extra_types.len() != extras.len()
                || !decl.extra_types.iter().zip(&extras).all(|(a, b)| types_equivalent(a, b)))
        {
            return Err(shape_err(&decl.name, "declared extra attribute types do not match the realization"));
        }
        decl.extra_types = extras;
        let mut world = self.clone();
        world.assoc_order.push_back(decl.name.clone());
        world.assocs.insert(decl.name.clone(), decl);
        Ok(world)
    }

    pub fn assoc(&self, name: &Name) -> Result<&AssocDecl> {
        self.assocs
            .get(name)
            .ok_or_else(|| ModelError::UnknownAssoc(name.clone()))
    }

    /// Associations in declaration order.
    pub fn assocs(&self) -> impl Iterator<Item = &AssocDecl> {
        self.assoc_order.iter().map(move |n| &self.assocs[n])
    }
}

/// Existing objects that are instances of `class` or of a subclass.
fn instances<'s>(world: &'s World, store: &'s Store, class: &'s Name) -> impl Iterator<Item = &'s Oid> + 's {
    store
        .oids()
        .iter()
        .filter(move |o| world.is_subclass(&o.class, class))
}

/// `v` as an existing participant of class `class`, if it is one.
fn participant<'v>(world: &World, store: &Store, v: &'v Value, class: &Name) -> Option<&'v Oid> {
    v.as_oid()
        .filter(|o| store.contains(o) && world.is_subclass(&o.class, class))
}

fn oriented(owner_index: usize, owner: &Oid, other: &Oid) -> Vec<Value> {
    let (owner, other) = (Value::Oid(owner.clone()), Value::Oid(other.clone()));
    if owner_index == 0 {
        vec![owner, other]
    } else {
        vec![other, owner]
    }
}

fn redundant_sides(world: &World, store: &Store, decl: &AssocDecl, direct: &Name, coll: &Name) -> Result<(Links, Links)> {
    let (a, b) = (&decl.signature[0], &decl.signature[1]);
    let mut by_direct = Links::new();
    for x in instances(world, store, a) {
        let y = store.val_attr(world, x, direct)?;
        if let Some(y) = participant(world, store, &y, b) {
            by_direct.insert(vec![Value::Oid(x.clone()), Value::Oid(y.clone())]);
        }
    }
    let mut by_collection = Links::new();
    for y in instances(world, store, b) {
        if let Value::Set(members) = store.val_attr(world, y, coll)? {
            for x in members.iter().filter_map(|m| participant(world, store, m, a)) {
                by_collection.insert(vec![Value::Oid(x.clone()), Value::Oid(y.clone())]);
            }
        }
    }
    Ok((by_direct, by_collection))
}

fn mediator_links(world: &World, store: &Store, decl: &AssocDecl, class: &Name, attrs: &[Name]) -> Result<Links> {
    let mut out = Links::new();
    'mediators: for m in instances(world, store, class) {
        let mut tuple = Vec::with_capacity(attrs.len());
        for (i, attr) in attrs.iter().enumerate() {
            let v = store.val_attr(world, m, attr)?;
            if let Some(target) = decl.signature.get(i) {
                if participant(world, store, &v, target).is_none() {
                    continue 'mediators;
                }
            }
            tuple.push(v);
        }
        out.insert(tuple);
    }
    Ok(out)
}

fn qualified_links(world: &World, store: &Store, decl: &AssocDecl) -> Result<BTreeSet<(Oid, Oid, Value)>> {
    let Strategy::Qualified {
        class,
        role_attrs,
        qualifier_attr,
        ..
    } = &decl.strategy
    else {
        return Err(ModelError::StrategyMismatch {
            assoc: decl.name.clone(),
            expected: "a qualified association",
        });
    };
    let attrs: Vec<Name> = role_attrs.iter().chain([qualifier_attr]).cloned().collect();
    Ok(mediator_links(world, store, decl, class, &attrs)?
        .into_iter()
        .map(|t| {
            let mut it = t.into_iter();
            let a = it.next().and_then(|v| v.as_oid().cloned()).expect("role checked");
            let b = it.next().and_then(|v| v.as_oid().cloned()).expect("role checked");
            (a, b, it.next().expect("qualifier present"))
        })
        .collect())
}

/// The first pair of triples sharing a source and qualifier but not a target.
fn qualifier_clash(triples: &BTreeSet<(Oid, Oid, Value)>) -> Option<(&Oid, &Value, &Oid, &Oid)> {
    let mut seen: BTreeMap<(&Oid, &Value), &Oid> = BTreeMap::new();
    for (a, b, q) in triples {
        match seen.get(&(a, q)) {
            Some(prev) if *prev != b => return Some((a, q, prev, b)),
            _ => {
                seen.insert((a, q), b);
            }
        }
    }
    None
}

/// Current links of association `r`.
pub fn rel_of(world: &World, store: &Store, r: &Name) -> Result<Links> {
    let decl = world.assoc(r)?;
    match &decl.strategy {
        Strategy::AttributeOwned { owner_index, attr } => {
            let owner = &decl.signature[*owner_index];
            let other = &decl.signature[1 - owner_index];
            let mut out = Links::new();
            for x in instances(world, store, owner) {
                let v = store.val_attr(world, x, attr)?;
                if let Some(y) = participant(world, store, &v, other) {
                    out.insert(oriented(*owner_index, x, y));
                }
            }
            Ok(out)
        }
        Strategy::Mediator {
            class,
            role_attrs,
            extra_attrs,
        } => {
            let attrs: Vec<Name> = role_attrs.iter().chain(extra_attrs).cloned().collect();
            mediator_links(world, store, decl, class, &attrs)
        }
        Strategy::RedundantHybrid {
            direct_attr,
            collection_attr,
        } => {
            let (by_direct, by_collection) = redundant_sides(world, store, decl, direct_attr, collection_attr)?;
            if by_direct != by_collection {
                return Err(ModelError::AssocInconsistent {
                    assoc: r.clone(),
                    detail: describe_difference(&by_direct, &by_collection),
                });
            }
            Ok(by_direct)
        }
        Strategy::Ordered { owner_index, .. } => Ok(ordered_binary_rel_of(world, store, r)?
            .iter()
            .flat_map(|(x, ys)| ys.iter().map(move |y| oriented(*owner_index, x, y)))
            .collect()),
        Strategy::Qualified { .. } => Ok(qualified_binary_rel_of(world, store, r)?
            .into_iter()
            .map(|(a, b, q)| vec![Value::Oid(a), Value::Oid(b), q])
            .collect()),
    }
}

/// Links of a binary association without extra attributes, as pairs.
pub fn binary_rel_of(world: &World, store: &Store, r: &Name) -> Result<BTreeSet<(Oid, Oid)>> {
    let decl = world.assoc(r)?;
    if decl.arity() != 2 || !decl.extra_types.is_empty() {
        return Err(ModelError::StrategyMismatch {
            assoc: r.clone(),
            expected: "a binary association without extra attributes",
        });
    }
    Ok(rel_of(world, store, r)?
        .into_iter()
        .filter_map(|t| Some((t[0].as_oid()?.clone(), t[1].as_oid()?.clone())))
        .collect())
}

/// For each owner object, its targets in list order, repetitions included.
pub fn ordered_binary_rel_of(world: &World, store: &Store, r: &Name) -> Result<BTreeMap<Oid, Vec<Oid>>> {
    let decl = world.assoc(r)?;
    let Strategy::Ordered {
        owner_index,
        list_attr,
    } = &decl.strategy
    else {
        return Err(ModelError::StrategyMismatch {
            assoc: r.clone(),
            expected: "an ordered association",
        });
    };
    let owner = &decl.signature[*owner_index];
    let other = &decl.signature[1 - owner_index];
    let mut out = BTreeMap::new();
    for x in instances(world, store, owner) {
        if let Value::List(items) = store.val_attr(world, x, list_attr)? {
            let targets = items
                .iter()
                .filter_map(|v| participant(world, store, v, other).cloned())
                .collect();
            out.insert(x.clone(), targets);
        }
    }
    Ok(out)
}

/// `(source, target, qualifier)` triples; fails if a qualifier of some
/// source identifies two different targets.
pub fn qualified_binary_rel_of(world: &World, store: &Store, r: &Name) -> Result<BTreeSet<(Oid, Oid, Value)>> {
    let decl = world.assoc(r)?;
    let triples = qualified_links(world, store, decl)?;
    if let Some((a, q, first, second)) = qualifier_clash(&triples) {
        return Err(ModelError::QualifierNotUnique {
            assoc: r.clone(),
            source_oid: a.clone(),
            qualifier: q.to_string(),
            first: first.clone(),
            second: second.clone(),
        });
    }
    Ok(triples)
}

fn render(t: &[Value]) -> String {
    let parts: Vec<String> = t.iter().map(Value::to_string).collect();
    format!("({})", parts.join(", "))
}

fn describe_difference(by_direct: &Links, by_collection: &Links) -> String {
    let only_direct: Vec<String> = by_direct.difference(by_collection).map(|t| render(t)).collect();
    let only_coll: Vec<String> = by_collection.difference(by_direct).map(|t| render(t)).collect();
    format!(
        "only via direct attribute: [{}]; only via collection: [{}]",
        only_direct.join(", "),
        only_coll.join(", ")
    )
}

/// Consistency of redundant realizations and uniqueness of qualifiers.
pub fn check_assoc_consistency(world: &World, store: &Store) -> Vec<Violation> {
    let mut out = Vec::new();
    for decl in world.assocs() {
        match &decl.strategy {
            Strategy::RedundantHybrid {
                direct_attr,
                collection_attr,
            } => match redundant_sides(world, store, decl, direct_attr, collection_attr) {
                Ok((d, c)) if d != c => out.push(Violation::new(
                    ViolationKind::AssocInconsistency,
                    format!("{}: {}", decl.name, describe_difference(&d, &c)),
                )),
                Ok(_) => {}
                Err(e) => out.push(Violation::new(ViolationKind::AssocInconsistency, format!("{}: {e}", decl.name))),
            },
            Strategy::Qualified { .. } => match qualified_links(world, store, decl) {
                Ok(triples) => {
                    if let Some((a, q, first, second)) = qualifier_clash(&triples) {
                        out.push(Violation::new(
                            ViolationKind::QualifierNotUnique,
                            format!("{}: qualifier {q} of {a} identifies both {first} and {second}", decl.name),
                        ));
                    }
                }
                Err(e) => out.push(Violation::new(ViolationKind::QualifierNotUnique, format!("{}: {e}", decl.name))),
            },
            _ => {}
        }
    }
    out
}

/// Records a link by updating the underlying realization.
///
/// For an attribute-owned association a second link from the same owner
/// replaces the first. The redundant realization updates both sides, and
/// unhooks the source from its previous target's collection.
pub fn link(world: &World, store: &Store, r: &Name, tuple: &[Value]) -> Result<(World, Store)> {
    let decl = world.assoc(r)?;
    let n = decl.arity();
    if tuple.len() != n + decl.extra_types.len() {
        return Err(ModelError::ArityMismatch {
            expected: n + decl.extra_types.len(),
            found: tuple.len(),
        });
    }
    let mut parts = Vec::with_capacity(n);
    for (v, class) in tuple.iter().zip(&decl.signature) {
        let o = v.as_oid().ok_or_else(|| carrier_violation(v, &TypeName::Oid(class.clone())))?;
        if !store.contains(o) {
            return Err(ModelError::UnknownOid(o.clone()));
        }
        if !world.is_subclass(&o.class, class) {
            return Err(carrier_violation(v, &TypeName::Oid(class.clone())));
        }
        parts.push(o);
    }
    for (v, t) in tuple[n..].iter().zip(&decl.extra_types) {
        world.check_storable(store, v, t)?;
    }

    match &decl.strategy {
        Strategy::AttributeOwned { owner_index, attr } => {
            let owner = parts[*owner_index];
            let other = tuple[1 - owner_index].clone();
            Ok((world.clone(), store.set_val_attr(world, owner, attr, other)?))
        }
        Strategy::Mediator {
            class,
            role_attrs,
            extra_attrs,
        } => {
            let attrs: Vec<&Name> = role_attrs.iter().chain(extra_attrs).collect();
            instantiate_mediator(world, store, class, &attrs, tuple)
        }
        Strategy::Qualified {
            class,
            role_attrs,
            qualifier_attr,
            ..
        } => {
            let existing = qualified_links(world, store, decl)?;
            let (a, b, q) = (parts[0], parts[1], &tuple[2]);
            if let Some((_, prev, _)) = existing.iter().find(|(x, y, p)| x == a && p == q && y != b) {
                return Err(ModelError::MultiplicityViolation {
                    assoc: r.clone(),
                    detail: format!("qualifier {q} of {a} already identifies {prev}"),
                });
            }
            let attrs: Vec<&Name> = role_attrs.iter().chain([qualifier_attr]).collect();
            instantiate_mediator(world, store, class, &attrs, tuple)
        }
        Strategy::RedundantHybrid {
            direct_attr,
            collection_attr,
        } => {
            let (a, b) = (parts[0], parts[1]);
            let mut next = store.clone();
            if let Value::Oid(previous) = store.val_attr(world, a, direct_attr)? {
                if previous != *b && store.contains(&previous) {
                    let mut members = collection(&store.val_attr(world, &previous, collection_attr)?);
                    members.remove(&tuple[0]);
                    next = next.set_val_attr(world, &previous, collection_attr, Value::Set(members))?;
                }
            }
            next = next.set_val_attr(world, a, direct_attr, tuple[1].clone())?;
            let mut members = collection(&next.val_attr(world, b, collection_attr)?);
            members.insert(tuple[0].clone());
            next = next.set_val_attr(world, b, collection_attr, Value::Set(members))?;
            Ok((world.clone(), next))
        }
        Strategy::Ordered {
            owner_index,
            list_attr,
        } => {
            let owner = parts[*owner_index];
            let mut items = match store.val_attr(world, owner, list_attr)? {
                Value::List(items) => items,
                _ => Vec::new(),
            };
            items.push(tuple[1 - owner_index].clone());
            Ok((world.clone(), store.set_val_attr(world, owner, list_attr, Value::List(items))?))
        }
    }
}

/// Members of a collection attribute; an unknown collection counts as empty.
fn collection(v: &Value) -> BTreeSet<Value> {
    match v {
        Value::Set(members) => members.clone(),
        _ => BTreeSet::new(),
    }
}

fn instantiate_mediator(world: &World, store: &Store, class: &Name, attrs: &[&Name], tuple: &[Value]) -> Result<(World, Store)> {
    let info = world.class(class)?;
    let mut init: BTreeMap<Name, Value> = info
        .attrs
        .iter()
        .map(|a| (a.name.clone(), Value::Unknown(a.kind.content_type().clone())))
        .collect();
    for (attr, v) in attrs.iter().zip(tuple) {
        let ty = info.attr(attr).expect("validated").kind.content_type();
        if !in_carrier(v, ty, world)? {
            return Err(carrier_violation(v, ty));
        }
        init.insert((*attr).clone(), v.clone());
    }
    let (world, store, _) = world.instantiate(store, class, &init)?;
    Ok((world, store))
}
