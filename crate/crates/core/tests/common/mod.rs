//! Generators and brute-force oracles shared by the integration suites.
//!
//! The oracles read instance records and raw memory directly and evaluate
//! the defining set comprehensions; they never call the retrieval
//! functions under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use sysmod::associations::{link, Links};
use sysmod::modelio::load_model;
use sysmod::{AttrDecl, AttrKind, ClassDecl, Loc, Name, Oid, Store, TypeName, Value, World};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn n(s: &str) -> Name {
    Name::from(s)
}

// ---------------------------------------------------------------------------
// Class hierarchies

#[derive(Clone, Debug)]
pub struct GenClass {
    pub name: String,
    pub supers: Vec<String>,
    pub subclass_of: Vec<String>,
    pub attrs: Vec<AttrDecl>,
}

impl GenClass {
    pub fn decl(&self) -> ClassDecl {
        let mut d = ClassDecl::new(self.name.as_str());
        for s in &self.supers {
            d = d.extends(s.as_str());
        }
        for s in &self.subclass_of {
            d = d.subclass_of(s.as_str());
        }
        for a in &self.attrs {
            d = d.attr(a.clone());
        }
        d
    }
}

/// Reflexive-transitive closure of `extends` and `subclassOf`, computed
/// from the generated declarations alone.
pub fn ancestors(classes: &[GenClass]) -> BTreeMap<String, BTreeSet<String>> {
    let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for c in classes {
        let mut set = BTreeSet::from([c.name.clone()]);
        for s in c.supers.iter().chain(&c.subclass_of) {
            set.extend(out[s].iter().cloned());
        }
        out.insert(c.name.clone(), set);
    }
    out
}

/// Attributes a class ends up with, name to (kind, declaring class).
pub type Effective = BTreeMap<String, (AttrKind, String)>;

pub fn effective(classes: &[GenClass], name: &str) -> Effective {
    let c = classes.iter().find(|c| c.name == name).expect("generated class");
    let mut out = Effective::new();
    for s in &c.supers {
        out.extend(effective(classes, s));
    }
    for a in &c.attrs {
        out.insert(a.name.to_string(), (a.kind.clone(), c.name.clone()));
    }
    out
}

pub fn random_type(rng: &mut TestRng, classes: &[String]) -> TypeName {
    match rng.gen_range(0..6) {
        0 => TypeName::int(),
        1 => TypeName::boolean(),
        2 | 3 => TypeName::oid(classes.choose(rng).expect("nonempty").as_str()),
        4 => TypeName::set(TypeName::int()),
        _ => TypeName::list(TypeName::boolean()),
    }
}

/// A member of `ty`'s carrier, referring only to objects in `pool`.
pub fn random_value(rng: &mut TestRng, ty: &TypeName, pool: &[Oid], anc: &BTreeMap<String, BTreeSet<String>>) -> Value {
    match ty {
        TypeName::Oid(c) | TypeName::Class(c) => {
            let fits: Vec<&Oid> = pool
                .iter()
                .filter(|o| anc[o.class.as_str()].contains(c.as_str()))
                .collect();
            match fits.choose(rng) {
                Some(o) if rng.gen_bool(0.8) => Value::Oid((*o).clone()),
                _ => Value::Nil,
            }
        }
        TypeName::Set(t) => Value::Set((0..rng.gen_range(0..4)).map(|_| random_value(rng, t, pool, anc)).collect()),
        TypeName::List(t) => Value::List((0..rng.gen_range(0..4)).map(|_| random_value(rng, t, pool, anc)).collect()),
        t if *t == TypeName::int() => Value::Int(rng.gen_range(-50..50)),
        t if *t == TypeName::boolean() => Value::Bool(rng.gen()),
        other => panic!("no generator for {other}"),
    }
}

/// Up to `max_classes` classes with at most `max_attrs` attributes each
/// (inherited included). Attribute names are globally unique, so any
/// combination of superclasses is conflict free.
pub fn random_hierarchy(rng: &mut TestRng, max_classes: usize, max_attrs: usize) -> Vec<GenClass> {
    let k = rng.gen_range(1..=max_classes);
    let mut classes: Vec<GenClass> = Vec::new();
    let mut counter = 0;
    for i in 0..k {
        let name = format!("C{i}");
        let earlier: Vec<String> = classes.iter().map(|c| c.name.clone()).collect();
        let mut supers = Vec::new();
        let want = rng.gen_range(0..=i.min(2));
        for s in earlier.choose_multiple(rng, want) {
            let mut trial = classes.clone();
            let mut probe_supers = supers.clone();
            probe_supers.push(s.clone());
            trial.push(GenClass {
                name: name.clone(),
                supers: probe_supers.clone(),
                subclass_of: Vec::new(),
                attrs: Vec::new(),
            });
            if effective(&trial, &name).len() <= max_attrs {
                supers = probe_supers;
            }
        }
        let mut probe = classes.clone();
        probe.push(GenClass {
            name: name.clone(),
            supers: supers.clone(),
            subclass_of: Vec::new(),
            attrs: Vec::new(),
        });
        let inherited = effective(&probe, &name).len();
        let mut visible = earlier.clone();
        visible.push(name.clone());
        let own = rng.gen_range(0..=(max_attrs - inherited).min(3));
        let attrs = (0..own)
            .map(|_| {
                counter += 1;
                let ty = random_type(rng, &visible);
                if rng.gen_bool(0.6) {
                    AttrDecl::mutable(format!("a{counter}").as_str(), ty)
                } else {
                    AttrDecl::constant(format!("a{counter}").as_str(), ty)
                }
            })
            .collect();
        classes.push(GenClass {
            name,
            supers,
            subclass_of: Vec::new(),
            attrs,
        });
    }
    classes
}

pub fn declare_all(classes: &[GenClass], strict: bool) -> sysmod::Result<World> {
    classes
        .iter()
        .try_fold(World::new(strict), |w, c| w.declare_class(c.decl()))
}

pub fn random_init(
    rng: &mut TestRng,
    world: &World,
    class: &str,
    pool: &[Oid],
    anc: &BTreeMap<String, BTreeSet<String>>,
) -> BTreeMap<Name, Value> {
    world
        .class(&n(class))
        .expect("declared")
        .attrs
        .iter()
        .map(|a| (a.name.clone(), random_value(rng, a.kind.content_type(), pool, anc)))
        .collect()
}

// ---------------------------------------------------------------------------
// Raw access

/// An attribute read straight from the instance record and memory.
pub fn raw_attr(world: &World, store: &Store, oid: &Oid, attr: &str) -> Option<Value> {
    let Value::Rec(fields) = world.instance(oid)? else {
        return None;
    };
    match fields.get(&n(attr))? {
        Value::Loc(l) => store.memory().get(l).cloned(),
        v => Some(v.clone()),
    }
}

pub fn raw_loc(world: &World, oid: &Oid, attr: &str) -> Loc {
    let Some(Value::Rec(fields)) = world.instance(oid) else {
        panic!("{oid} has no record");
    };
    match fields.get(&n(attr)) {
        Some(Value::Loc(l)) => *l,
        other => panic!("{oid}.{attr} is not a location field: {other:?}"),
    }
}

/// Writes memory without any consistency maintenance.
pub fn raw_write(world: &World, store: &Store, oid: &Oid, attr: &str, v: Value) -> Store {
    store
        .set_val_loc(world, raw_loc(world, oid, attr), v)
        .expect("raw write of a carrier value")
}

// ---------------------------------------------------------------------------
// Association fixture: one association per strategy over A <- A2, B <- B2.

pub const ASSOC_MODEL: &str = "
class B { coll: loc Set(A), back: loc A }
class B2 extends B {}
class A { own: loc B, med: loc B, items: loc List(B) }
class A2 extends A {}
class X { tag: Int }
class M { a: loc A, b: loc B, w: Int }
class Q { a: loc A, b: loc B, q: Int }
assoc Own (A, B) via attribute A.own
assoc Back (A, B) via attribute B.back
assoc Med (A, B) via mediator M
assoc Red (A, B) via redundant A.med, B.coll
assoc Ord (A, B) via ordered A.items
assoc Qual (A, B) via qualified Q by Int
";

/// The fixture's subclass relation, written out by hand.
pub fn fixture_sub(c: &str, target: &str) -> bool {
    c == target || (c == "A2" && target == "A") || (c == "B2" && target == "B")
}

fn of_class<'a>(store: &'a Store, target: &'a str) -> impl Iterator<Item = &'a Oid> + 'a {
    store.oids().iter().filter(move |o| fixture_sub(o.class.as_str(), target))
}

/// `v` as a participant at a position typed `target`: an existing object
/// of a subclass.
fn live(store: &Store, v: &Value, target: &str) -> Option<Oid> {
    match v {
        Value::Oid(o) if store.contains(o) && fixture_sub(o.class.as_str(), target) => Some(o.clone()),
        _ => None,
    }
}

fn pair(a: &Oid, b: &Oid) -> Vec<Value> {
    vec![Value::Oid(a.clone()), Value::Oid(b.clone())]
}

/// `{(x, y) | x in A, y = x.attr, y in B}` for an attribute on A, or the
/// mirror image for an attribute on B.
pub fn oracle_attribute(world: &World, store: &Store, owner_is_a: bool, attr: &str) -> Links {
    let (owner, other) = if owner_is_a { ("A", "B") } else { ("B", "A") };
    let mut out = Links::new();
    for x in of_class(store, owner) {
        if let Some(y) = raw_attr(world, store, x, attr).and_then(|v| live(store, &v, other)) {
            out.insert(if owner_is_a { pair(x, &y) } else { pair(&y, x) });
        }
    }
    out
}

/// `{(m.a, m.b, extras) | m in mediator, m.a in A, m.b in B}`.
pub fn oracle_mediator(world: &World, store: &Store, class: &str, extras: &[&str]) -> Links {
    let mut out = Links::new();
    for m in of_class(store, class) {
        let a = raw_attr(world, store, m, "a").and_then(|v| live(store, &v, "A"));
        let b = raw_attr(world, store, m, "b").and_then(|v| live(store, &v, "B"));
        if let (Some(a), Some(b)) = (a, b) {
            let mut t = pair(&a, &b);
            t.extend(extras.iter().map(|e| raw_attr(world, store, m, e).expect("extra attribute")));
            out.insert(t);
        }
    }
    out
}

/// Both sides of the redundant realization: via `A.med` and via `B.coll`.
pub fn oracle_redundant_sides(world: &World, store: &Store) -> (Links, Links) {
    let mut direct = Links::new();
    for x in of_class(store, "A") {
        if let Some(y) = raw_attr(world, store, x, "med").and_then(|v| live(store, &v, "B")) {
            direct.insert(pair(x, &y));
        }
    }
    let mut collection = Links::new();
    for y in of_class(store, "B") {
        if let Some(Value::Set(members)) = raw_attr(world, store, y, "coll") {
            for v in &members {
                if let Some(x) = live(store, v, "A") {
                    collection.insert(pair(&x, y));
                }
            }
        }
    }
    (direct, collection)
}

/// Owner to targets in list order, for owners holding a list.
pub fn oracle_ordered(world: &World, store: &Store) -> BTreeMap<Oid, Vec<Oid>> {
    let mut out = BTreeMap::new();
    for x in of_class(store, "A") {
        if let Some(Value::List(items)) = raw_attr(world, store, x, "items") {
            out.insert(x.clone(), items.iter().filter_map(|v| live(store, v, "B")).collect());
        }
    }
    out
}

/// Qualified triples, or `None` when some qualifier of a source picks out
/// two targets.
pub fn oracle_qualified(world: &World, store: &Store) -> Option<BTreeSet<(Oid, Oid, Value)>> {
    let links = oracle_mediator(world, store, "Q", &["q"]);
    let triples: BTreeSet<(Oid, Oid, Value)> = links
        .into_iter()
        .map(|t| (t[0].as_oid().unwrap().clone(), t[1].as_oid().unwrap().clone(), t[2].clone()))
        .collect();
    for (a, b, q) in &triples {
        if triples.iter().any(|(a2, b2, q2)| a2 == a && q2 == q && b2 != b) {
            return None;
        }
    }
    Some(triples)
}

pub struct AssocFixture {
    pub world: World,
    pub store: Store,
}

impl AssocFixture {
    pub fn objects(&self, target: &str) -> Vec<Oid> {
        of_class(&self.store, target).cloned().collect()
    }

    fn pick(&self, rng: &mut TestRng, target: &str) -> Option<Oid> {
        self.objects(target).choose(rng).cloned()
    }

    fn pick_or_nil(&self, rng: &mut TestRng, target: &str) -> Value {
        match self.pick(rng, target) {
            Some(o) if rng.gen_bool(0.8) => Value::Oid(o),
            _ => Value::Nil,
        }
    }

    fn try_link(&mut self, assoc: &str, tuple: Vec<Value>) -> bool {
        match link(&self.world, &self.store, &n(assoc), &tuple) {
            Ok((w, s)) => {
                self.world = w;
                self.store = s;
                true
            }
            Err(_) => false,
        }
    }

    fn new_object(&mut self, class: &str, init: &[(&str, Value)]) -> Oid {
        let init = init.iter().map(|(k, v)| (n(k), v.clone())).collect();
        let (w, s, o) = self.world.instantiate(&self.store, &n(class), &init).expect("fixture object");
        self.world = w;
        self.store = s;
        o
    }

    /// Fresh A, B and X objects with empty association state.
    pub fn populate(rng: &mut TestRng, min_each: usize) -> Self {
        let (world, store) = load_model(ASSOC_MODEL, false).expect("fixture model loads");
        let mut f = AssocFixture { world, store };
        for _ in 0..rng.gen_range(min_each..=5) {
            let class = if rng.gen_bool(0.3) { "B2" } else { "B" };
            f.new_object(class, &[("coll", Value::Set(BTreeSet::new())), ("back", Value::Nil)]);
        }
        for _ in 0..rng.gen_range(0..=2) {
            f.new_object("X", &[("tag", Value::Int(rng.gen_range(0..9)))]);
        }
        for _ in 0..rng.gen_range(min_each..=5) {
            let class = if rng.gen_bool(0.3) { "A2" } else { "A" };
            f.new_object(
                class,
                &[("own", Value::Nil), ("med", Value::Nil), ("items", Value::List(Vec::new()))],
            );
        }
        f
    }

    /// Random links plus raw writes that bypass `link`, except on the
    /// redundant pair, which is only ever changed by linking.
    pub fn random(rng: &mut TestRng) -> Self {
        let mut f = Self::populate(rng, 0);
        for _ in 0..rng.gen_range(0..=25) {
            let a = f.pick(rng, "A");
            let b = f.pick(rng, "B");
            let (Some(a), Some(b)) = (a, b) else { continue };
            let (av, bv) = (Value::Oid(a.clone()), Value::Oid(b.clone()));
            match rng.gen_range(0..12) {
                0 => {
                    let v = f.pick_or_nil(rng, "B");
                    f.store = raw_write(&f.world, &f.store, &a, "own", v);
                }
                1 => {
                    let v = f.pick_or_nil(rng, "A");
                    f.store = raw_write(&f.world, &f.store, &b, "back", v);
                }
                2 => {
                    f.try_link("Own", vec![av, bv]);
                }
                3 => {
                    f.try_link("Back", vec![av, bv]);
                }
                4 => {
                    f.try_link("Med", vec![av, bv, Value::Int(rng.gen_range(0..3))]);
                }
                5 => {
                    f.try_link("Red", vec![av, bv]);
                }
                6 => {
                    f.try_link("Ord", vec![av, bv]);
                }
                7 => {
                    let items = (0..rng.gen_range(0..4)).map(|_| f.pick_or_nil(rng, "B")).collect();
                    f.store = raw_write(&f.world, &f.store, &a, "items", Value::List(items));
                }
                8 | 11 => {
                    f.try_link("Qual", vec![av, bv, Value::Int(rng.gen_range(0..2))]);
                }
                10 => {
                    // Give one qualifier object another's source.
                    let qs = f.objects("Q");
                    if let (Some(m), Some(other)) = (qs.choose(rng), qs.choose(rng)) {
                        let src = raw_attr(&f.world, &f.store, other, "a").unwrap();
                        f.store = raw_write(&f.world, &f.store, m, "a", src);
                    }
                }
                _ => {
                    let mediators: Vec<Oid> = f.objects("M").into_iter().chain(f.objects("Q")).collect();
                    if let Some(m) = mediators.choose(rng) {
                        let (attr, target) = if rng.gen_bool(0.5) { ("a", "A") } else { ("b", "B") };
                        let v = f.pick_or_nil(rng, target);
                        f.store = raw_write(&f.world, &f.store, m, attr, v);
                    }
                }
            }
        }
        f
    }

    /// A store whose only association state comes from redundant links.
    pub fn redundant_consistent(rng: &mut TestRng) -> Self {
        let mut f = Self::populate(rng, 1);
        for _ in 0..rng.gen_range(0..=12) {
            let a = f.pick(rng, "A").expect("populated");
            let b = f.pick(rng, "B").expect("populated");
            assert!(f.try_link("Red", vec![Value::Oid(a), Value::Oid(b)]));
        }
        f
    }

    /// One raw write that makes the two redundant sides disagree.
    pub fn desynchronize(&mut self, rng: &mut TestRng) {
        let as_ = self.objects("A");
        let bs = self.objects("B");
        loop {
            if rng.gen_bool(0.5) {
                // Repoint a direct attribute.
                let x = as_.choose(rng).unwrap();
                let current = raw_attr(&self.world, &self.store, x, "med").unwrap();
                let mut choices: Vec<Value> = bs.iter().cloned().map(Value::Oid).collect();
                choices.push(Value::Nil);
                choices.retain(|v| *v != current);
                let v = choices.choose(rng).unwrap().clone();
                self.store = raw_write(&self.world, &self.store, x, "med", v);
                return;
            }
            // Add a stranger to, or drop a member from, a collection.
            let y = bs.choose(rng).unwrap();
            let Some(Value::Set(mut members)) = raw_attr(&self.world, &self.store, y, "coll") else {
                continue;
            };
            let strangers: Vec<&Oid> = as_
                .iter()
                .filter(|x| !members.contains(&Value::Oid((*x).clone())))
                .collect();
            if rng.gen_bool(0.5) && !members.is_empty() {
                let drop = members.iter().next().unwrap().clone();
                members.remove(&drop);
            } else if let Some(x) = strangers.choose(rng) {
                members.insert(Value::Oid((*x).clone()));
            } else {
                continue;
            }
            self.store = raw_write(&self.world, &self.store, y, "coll", Value::Set(members));
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Random model and script text

#[derive(Clone, Debug)]
struct MAttr {
    name: String,
    ty: TypeName,
    mutable: bool,
    /// Backs an association; only `link` changes it.
    backing: bool,
}

impl MAttr {
    fn settable(&self) -> bool {
        self.mutable && !self.backing
    }
}

#[derive(Clone, Debug)]
struct MClass {
    name: String,
    sup: Option<String>,
    attrs: Vec<MAttr>,
}

#[derive(Clone, Debug)]
enum MAssoc {
    Attribute { name: String, owner: usize, other: usize },
    Mediator { name: String, a: usize, b: usize },
    Redundant { name: String, a: usize, b: usize },
    Ordered { name: String, owner: usize, other: usize },
    Qualified { name: String, a: usize, b: usize },
}

#[derive(Clone, Debug)]
pub struct GenModel {
    pub text: String,
    classes: Vec<MClass>,
    assocs: Vec<MAssoc>,
}

fn type_text(ty: &TypeName) -> String {
    ty.to_string()
}

impl GenModel {
    pub fn random(rng: &mut TestRng) -> Self {
        let k = rng.gen_range(2..=5);
        let mut classes: Vec<MClass> = Vec::new();
        for i in 0..k {
            let sup = if i > 0 && rng.gen_bool(0.3) {
                Some(format!("K{}", rng.gen_range(0..i)))
            } else {
                None
            };
            let attrs = (0..rng.gen_range(0..=3))
                .map(|j| {
                    let mutable = rng.gen_bool(0.7);
                    let ty = match rng.gen_range(0..4) {
                        0 => TypeName::int(),
                        1 => TypeName::boolean(),
                        2 if mutable => TypeName::list(TypeName::int()),
                        2 => TypeName::set(TypeName::int()),
                        _ => TypeName::oid(format!("K{}", rng.gen_range(0..k)).as_str()),
                    };
                    MAttr {
                        name: format!("k{i}_{j}"),
                        ty,
                        mutable,
                        backing: false,
                    }
                })
                .collect();
            classes.push(MClass {
                name: format!("K{i}"),
                sup,
                attrs,
            });
        }
        let mut assocs = Vec::new();
        let mut extra_classes = Vec::new();
        for r in 0..rng.gen_range(1..=4) {
            let name = format!("R{r}");
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k);
            let backing = |ty: TypeName, attr: &str| MAttr {
                name: attr.to_string(),
                ty,
                mutable: true,
                backing: true,
            };
            let kb = TypeName::oid(format!("K{b}").as_str());
            match rng.gen_range(0..5) {
                0 => {
                    classes[a].attrs.push(backing(kb, &format!("r{r}")));
                    assocs.push(MAssoc::Attribute { name, owner: a, other: b });
                }
                1 => {
                    extra_classes.push(format!(
                        "class M{r} {{ a: loc K{a}, b: loc K{b}, w: Int }}"
                    ));
                    assocs.push(MAssoc::Mediator { name, a, b });
                }
                2 => {
                    if a == b {
                        b = (a + 1) % k;
                    }
                    let kb = TypeName::oid(format!("K{b}").as_str());
                    classes[a].attrs.push(backing(kb, &format!("d{r}")));
                    classes[b]
                        .attrs
                        .push(backing(TypeName::set(TypeName::oid(format!("K{a}").as_str())), &format!("c{r}")));
                    assocs.push(MAssoc::Redundant { name, a, b });
                }
                3 => {
                    classes[a].attrs.push(backing(TypeName::list(kb), &format!("o{r}")));
                    assocs.push(MAssoc::Ordered { name, owner: a, other: b });
                }
                _ => {
                    extra_classes.push(format!(
                        "class Q{r} {{ a: loc K{a}, b: loc K{b}, q: Int }}"
                    ));
                    assocs.push(MAssoc::Qualified { name, a, b });
                }
            }
        }

        let mut text = String::new();
        for c in &classes {
            let _ = write!(text, "class {}", c.name);
            if let Some(s) = &c.sup {
                let _ = write!(text, " extends {s}");
            }
            text.push_str(" {\n");
            for a in &c.attrs {
                let loc = if a.mutable { "loc " } else { "" };
                let _ = writeln!(text, "  {}: {loc}{}", a.name, type_text(&a.ty));
            }
            text.push_str("}\n");
        }
        for c in &extra_classes {
            let _ = writeln!(text, "{c}");
        }
        for r in &assocs {
            let line = match r {
                MAssoc::Attribute { name, owner, other } => {
                    format!("assoc {name} (K{owner}, K{other}) via attribute K{owner}.r{}", &name[1..])
                }
                MAssoc::Mediator { name, a, b } => format!("assoc {name} (K{a}, K{b}) via mediator M{}", &name[1..]),
                MAssoc::Redundant { name, a, b } => {
                    let r = &name[1..];
                    format!("assoc {name} (K{a}, K{b}) via redundant K{a}.d{r}, K{b}.c{r}")
                }
                MAssoc::Ordered { name, owner, other } => {
                    format!("assoc {name} (K{owner}, K{other}) via ordered K{owner}.o{}", &name[1..])
                }
                MAssoc::Qualified { name, a, b } => {
                    format!("assoc {name} (K{a}, K{b}) via qualified Q{} by Int", &name[1..])
                }
            };
            let _ = writeln!(text, "{line}");
        }
        for s in 0..rng.gen_range(0..=2) {
            let _ = writeln!(text, "static s{s} : Int = {}", rng.gen_range(-9..9));
        }
        GenModel { text, classes, assocs }
    }

    fn is_sub(&self, c: usize, target: usize) -> bool {
        let mut cur = Some(c);
        while let Some(i) = cur {
            if i == target {
                return true;
            }
            cur = self.classes[i].sup.as_ref().map(|s| s[1..].parse().unwrap());
        }
        false
    }

    fn effective(&self, c: usize) -> Vec<MAttr> {
        let mut out = match &self.classes[c].sup {
            Some(s) => self.effective(s[1..].parse().unwrap()),
            None => Vec::new(),
        };
        out.extend(self.classes[c].attrs.iter().cloned());
        out
    }

    /// A script of valid statements, each followed by `check`.
    pub fn random_script(&self, rng: &mut TestRng, steps: usize) -> String {
        let mut vars: Vec<(String, usize)> = Vec::new();
        let mut qualifier = 0;
        let mut out = String::new();
        let pick = |rng: &mut TestRng, vars: &[(String, usize)], target: usize, model: &GenModel| -> Option<String> {
            let fits: Vec<&(String, usize)> = vars.iter().filter(|(_, c)| model.is_sub(*c, target)).collect();
            fits.choose(rng).map(|(v, _)| v.clone())
        };
        let literal = |rng: &mut TestRng, vars: &[(String, usize)], a: &MAttr, model: &GenModel| -> String {
            if a.backing {
                return match &a.ty {
                    TypeName::Set(_) => "{}".into(),
                    TypeName::List(_) => "[]".into(),
                    _ => "nil".into(),
                };
            }
            match &a.ty {
                TypeName::Oid(c) => {
                    let target: usize = c.as_str()[1..].parse().unwrap();
                    match pick(rng, vars, target, model) {
                        Some(v) if rng.gen_bool(0.8) => v,
                        _ => "nil".into(),
                    }
                }
                TypeName::List(_) => {
                    let items: Vec<String> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(-5..5).to_string()).collect();
                    format!("[{}]", items.join(", "))
                }
                TypeName::Set(_) => {
                    let items: Vec<String> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(-5..5).to_string()).collect();
                    format!("{{{}}}", items.join(", "))
                }
                t if *t == TypeName::boolean() => rng.gen_bool(0.5).to_string(),
                _ if rng.gen_bool(0.1) => "unknown".into(),
                _ => rng.gen_range(-99..99).to_string(),
            }
        };

        for _ in 0..steps {
            let choice = if vars.is_empty() { 0 } else { rng.gen_range(0..4) };
            match choice {
                0 => {
                    let c = rng.gen_range(0..self.classes.len());
                    let var = format!("v{}", vars.len());
                    let inits: Vec<String> = self
                        .effective(c)
                        .iter()
                        .map(|a| format!("{} = {}", a.name, literal(rng, &vars, a, self)))
                        .collect();
                    let _ = writeln!(out, "new {var} : K{c} {{ {} }}", inits.join(", "));
                    vars.push((var, c));
                }
                1 => {
                    let (var, c) = vars.choose(rng).unwrap().clone();
                    let settable: Vec<MAttr> = self.effective(c).into_iter().filter(MAttr::settable).collect();
                    let Some(a) = settable.choose(rng) else { continue };
                    let lit = literal(rng, &vars, a, self);
                    let _ = writeln!(out, "set {var}.{} = {lit}", a.name);
                    if lit != "unknown" && !matches!(a.ty, TypeName::Set(_)) {
                        let _ = writeln!(out, "assert {var}.{} == {lit}", a.name);
                    }
                }
                2 => {
                    let r = self.assocs.choose(rng).unwrap();
                    let (name, a, b) = match r {
                        MAssoc::Attribute { name, owner, other } | MAssoc::Ordered { name, owner, other } => {
                            (name, *owner, *other)
                        }
                        MAssoc::Mediator { name, a, b }
                        | MAssoc::Redundant { name, a, b }
                        | MAssoc::Qualified { name, a, b } => (name, *a, *b),
                    };
                    let (Some(x), Some(y)) = (pick(rng, &vars, a, self), pick(rng, &vars, b, self)) else {
                        continue;
                    };
                    let tuple = match r {
                        MAssoc::Mediator { .. } => format!("({x}, {y}, {})", rng.gen_range(0..5)),
                        MAssoc::Qualified { .. } => {
                            qualifier += 1;
                            format!("({x}, {y}, {qualifier})")
                        }
                        _ => format!("({x}, {y})"),
                    };
                    let _ = writeln!(out, "link {name} {tuple}");
                    let _ = writeln!(out, "assert rel {name} contains {tuple}");
                }
                _ => {
                    let _ = writeln!(out, "dump");
                }
            }
            let _ = writeln!(out, "check");
        }
        out
    }
}
