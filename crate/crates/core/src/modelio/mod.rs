//! The textual front end: model files, store scripts and snapshot dumps.

pub mod lexer;
pub mod parser;
pub mod script;
pub mod snapshot;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::associations::{AssocDecl, Strategy};
use crate::classes::World;
use crate::datastore::Store;
use crate::error::ModelError;
use crate::universe::{Name, Oid, TypeName, Value};

pub use lexer::{Diagnostic, Pos};
pub use parser::{parse_model, parse_script, Decl, Literal, Model, Script, Stmt, StrategySyntax};
pub use script::{run_script, ScriptRun};
pub use snapshot::{dump_snapshot, Snapshot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("variable `{0}` is already bound")]
    VariableInUse(Name),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

/// Why a model could not be loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    Syntax(Diagnostic),
    Declaration { pos: Pos, error: RunError },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Syntax(d) => write!(f, "syntax error at {d}"),
            LoadError::Declaration { pos, error } => write!(f, "{pos}: {error}"),
        }
    }
}

impl std::error::Error for LoadError {}

/// Parses a model and replays its declarations into a fresh world.
pub fn load_model(src: &str, strict_inheritance: bool) -> Result<(World, Store), LoadError> {
    let model = parse_model(src).map_err(LoadError::Syntax)?;
    replay(&model, World::new(strict_inheritance), Store::default())
}

/// Declares every item of `model`, in order.
pub fn replay(model: &Model, mut world: World, mut store: Store) -> Result<(World, Store), LoadError> {
    let mut last = Pos::default();
    for decl in model {
        last = decl.pos;
        let at = |error: RunError| LoadError::Declaration { pos: decl.pos, error };
        match &decl.item {
            Decl::Class(c) => {
                world = world.declare_class(c.clone()).map_err(|e| at(e.into()))?;
            }
            Decl::Assoc {
                name,
                signature,
                strategy,
            } => {
                let strategy = resolve_strategy(&world, name, signature, strategy).map_err(|e| at(e.into()))?;
                world = world
                    .declare_assoc(AssocDecl::new(name.clone(), signature.clone(), strategy))
                    .map_err(|e| at(e.into()))?;
            }
            Decl::Static { name, ty, value } => {
                let v = resolve_literal(value, ty, &BTreeMap::new()).map_err(at)?;
                (world, store) = world.declare_static_attr(&store, name, ty, &v).map_err(|e| at(e.into()))?;
            }
        }
    }
    if let Some((_, _, missing)) = world.unresolved_types().into_iter().next() {
        return Err(LoadError::Declaration {
            pos: last,
            error: ModelError::UnknownClass(missing).into(),
        });
    }
    Ok((world, store))
}

fn index_in(assoc: &Name, signature: &[Name], class: &Name) -> Result<usize, ModelError> {
    signature
        .iter()
        .position(|c| c == class)
        .ok_or_else(|| ModelError::StrategyShapeMismatch {
            assoc: assoc.clone(),
            reason: format!("`{class}` is not in the signature"),
        })
}

fn resolve_strategy(
    world: &World,
    assoc: &Name,
    signature: &[Name],
    syntax: &StrategySyntax,
) -> Result<Strategy, ModelError> {
    Ok(match syntax {
        StrategySyntax::Attribute { class, attr } => Strategy::AttributeOwned {
            owner_index: index_in(assoc, signature, class)?,
            attr: attr.clone(),
        },
        StrategySyntax::Mediator { class } => {
            Strategy::mediator_by_position(world, assoc, class, signature.len())?
        }
        StrategySyntax::Redundant {
            direct_class,
            direct_attr,
            collection_class,
            collection_attr,
        } => {
            if signature.len() != 2 || signature[0] != *direct_class || signature[1] != *collection_class {
                return Err(ModelError::StrategyShapeMismatch {
                    assoc: assoc.clone(),
                    reason: "redundant realization names the first class's attribute, then the second's".into(),
                });
            }
            Strategy::RedundantHybrid {
                direct_attr: direct_attr.clone(),
                collection_attr: collection_attr.clone(),
            }
        }
        StrategySyntax::Ordered { class, attr } => Strategy::Ordered {
            owner_index: index_in(assoc, signature, class)?,
            list_attr: attr.clone(),
        },
        StrategySyntax::Qualified { class, qualifier } => {
            Strategy::qualified_by_position(world, assoc, class, qualifier.clone())?
        }
    })
}

fn element_type(ty: &TypeName) -> &TypeName {
    match ty {
        TypeName::List(t) | TypeName::Set(t) => t,
        other => other,
    }
}

/// Turns a literal into a value. `ty` gives the type that `unknown`
/// stands for, including inside collections and records.
pub fn resolve_literal(lit: &Literal, ty: &TypeName, vars: &BTreeMap<Name, Oid>) -> Result<Value, RunError> {
    Ok(match lit {
        Literal::Int(z) => Value::Int(*z),
        Literal::Bool(b) => Value::Bool(*b),
        Literal::Void => Value::Void,
        Literal::Nil => Value::Nil,
        Literal::Unknown => Value::Unknown(ty.clone()),
        Literal::Var(v) => Value::Oid(vars.get(v).cloned().ok_or_else(|| RunError::UnboundVariable(v.clone()))?),
        Literal::List(items) => Value::List(
            items
                .iter()
                .map(|l| resolve_literal(l, element_type(ty), vars))
                .collect::<Result<_, _>>()?,
        ),
        Literal::Set(items) => Value::Set(
            items
                .iter()
                .map(|l| resolve_literal(l, element_type(ty), vars))
                .collect::<Result<_, _>>()?,
        ),
        Literal::Rec(fields) => {
            let mut out = BTreeMap::new();
            for (n, l) in fields {
                let fty = match ty {
                    TypeName::Rec(fs) => fs.get(n).unwrap_or(ty),
                    _ => ty,
                };
                if out.insert(n.clone(), resolve_literal(l, fty, vars)?).is_some() {
                    return Err(ModelError::DuplicateField(n.clone()).into());
                }
            }
            Value::Rec(out)
        }
    })
}
