//! Store scripts: sequences of object creation, updates, links, assertions
//! and checks, executed against a loaded model.

use std::collections::BTreeMap;

use crate::associations::{link, rel_of};
use crate::classes::World;
use crate::datastore::{check_store, Store};
use crate::error::ModelError;
use crate::universe::{Name, Oid, TypeName, Value};

use super::lexer::Pos;
use super::parser::{Literal, Script, Stmt};
use super::snapshot::dump_snapshot;
use super::{resolve_literal, RunError};

/// Where a script stopped, if it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// 1-based statement number.
    pub statement: usize,
    pub pos: Pos,
    pub error: RunError,
}

#[derive(Clone, Debug)]
pub struct ScriptRun {
    pub world: World,
    pub store: Store,
    pub transcript: Vec<String>,
    pub failure: Option<Failure>,
    /// Violations reported by `check` statements.
    pub violations: usize,
    /// Variable bindings after the last executed statement.
    pub vars: BTreeMap<Name, Oid>,
}

impl ScriptRun {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none() && self.violations == 0
    }
}

fn render_tuple(vs: &[Value]) -> String {
    let parts: Vec<String> = vs.iter().map(Value::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Executes `script` statement by statement, stopping at the first error.
pub fn run_script(world: World, store: Store, script: &Script) -> ScriptRun {
    let mut run = ScriptRun {
        world,
        store,
        transcript: Vec::new(),
        failure: None,
        violations: 0,
        vars: BTreeMap::new(),
    };
    for (i, stmt) in script.iter().enumerate() {
        let number = i + 1;
        match step(&mut run, &stmt.item) {
            Ok(lines) => run
                .transcript
                .extend(lines.into_iter().enumerate().map(|(k, l)| if k == 0 { format!("#{number} {l}") } else { l })),
            Err(error) => {
                run.transcript.push(format!("#{number} error at {}: {error}", stmt.pos));
                run.failure = Some(Failure {
                    statement: number,
                    pos: stmt.pos,
                    error,
                });
                break;
            }
        }
    }
    run
}

fn lookup(run: &ScriptRun, var: &Name) -> Result<Oid, RunError> {
    run.vars
        .get(var)
        .cloned()
        .ok_or_else(|| RunError::UnboundVariable(var.clone()))
}

fn attr_type(world: &World, oid: &Oid, attr: &Name) -> Result<TypeName, RunError> {
    let info = world.class(&oid.class)?;
    Ok(info
        .attr(attr)
        .ok_or_else(|| ModelError::NoSuchAttr {
            class: oid.class.clone(),
            attr: attr.clone(),
        })?
        .kind
        .content_type()
        .clone())
}

/// Resolves a link tuple against an association's component types.
fn resolve_tuple(run: &ScriptRun, assoc: &Name, lits: &[Literal]) -> Result<Vec<Value>, RunError> {
    let decl = run.world.assoc(assoc)?;
    let types: Vec<TypeName> = decl
        .signature
        .iter()
        .map(|c| TypeName::Oid(c.clone()))
        .chain(decl.extra_types.iter().cloned())
        .collect();
    if types.len() != lits.len() {
        return Err(ModelError::ArityMismatch {
            expected: types.len(),
            found: lits.len(),
        }
        .into());
    }
    lits.iter()
        .zip(&types)
        .map(|(l, t)| resolve_literal(l, t, &run.vars))
        .collect()
}

fn step(run: &mut ScriptRun, stmt: &Stmt) -> Result<Vec<String>, RunError> {
    match stmt {
        Stmt::New { var, class, inits } => {
            if run.vars.contains_key(var) {
                return Err(RunError::VariableInUse(var.clone()));
            }
            let info = run.world.class(class)?;
            let mut init = BTreeMap::new();
            for (attr, lit) in inits {
                let ty = info
                    .attr(attr)
                    .ok_or_else(|| ModelError::NoSuchAttr {
                        class: class.clone(),
                        attr: attr.clone(),
                    })?
                    .kind
                    .content_type();
                if init.insert(attr.clone(), resolve_literal(lit, ty, &run.vars)?).is_some() {
                    return Err(ModelError::DuplicateField(attr.clone()).into());
                }
            }
            let (world, store, oid) = run.world.instantiate(&run.store, class, &init)?;
            run.world = world;
            run.store = store;
            run.vars.insert(var.clone(), oid.clone());
            Ok(vec![format!("new {var} : {class} -> {oid}")])
        }
        Stmt::Set { var, attr, value } => {
            let oid = lookup(run, var)?;
            let v = resolve_literal(value, &attr_type(&run.world, &oid, attr)?, &run.vars)?;
            run.store = run.store.set_val_attr(&run.world, &oid, attr, v.clone())?;
            Ok(vec![format!("set {oid}.{attr} = {v}")])
        }
        Stmt::Link { assoc, args } => {
            let tuple = resolve_tuple(run, assoc, args)?;
            let (world, store) = link(&run.world, &run.store, assoc, &tuple)?;
            run.world = world;
            run.store = store;
            Ok(vec![format!("link {assoc} {}", render_tuple(&tuple))])
        }
        Stmt::AssertRel { assoc, negated, tuple } => {
            let tuple = resolve_tuple(run, assoc, tuple)?;
            let present = rel_of(&run.world, &run.store, assoc)?.contains(&tuple);
            let word = if *negated { "not contains" } else { "contains" };
            let line = format!("assert rel {assoc} {word} {}", render_tuple(&tuple));
            if present == *negated {
                return Err(RunError::AssertionFailed(line));
            }
            Ok(vec![format!("{line}: ok")])
        }
        Stmt::AssertVal { var, attr, value } => {
            let oid = lookup(run, var)?;
            let expected = resolve_literal(value, &attr_type(&run.world, &oid, attr)?, &run.vars)?;
            let actual = run.store.val_attr(&run.world, &oid, attr)?;
            if actual != expected {
                return Err(RunError::AssertionFailed(format!("{oid}.{attr} is {actual}, expected {expected}")));
            }
            Ok(vec![format!("assert {oid}.{attr} == {expected}: ok")])
        }
        Stmt::Check => {
            let report = check_store(&run.world, &run.store);
            run.violations += report.violations.len();
            let mut lines = vec![format!("check: {}", report.to_string().lines().next().unwrap_or_default())];
            lines.extend(report.to_string().lines().skip(1).map(str::to_string));
            Ok(lines)
        }
        Stmt::Dump => {
            let mut lines = vec!["dump".to_string()];
            lines.extend(dump_snapshot(&run.world, &run.store).to_text().lines().map(str::to_string));
            Ok(lines)
        }
    }
}
