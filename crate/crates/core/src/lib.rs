//! An executable structural system model for object-oriented modeling
//! languages.
//!
//! The crate is a deep embedding: type names, values, classes, objects,
//! snapshot stores and associations are plain data, and every semantic
//! function is an ordinary Rust function over them.
//!
//! - [`universe`]: names, type names, values, carrier membership
//! - [`constructors`]: records, tuples, projection and dereferencing
//! - [`classes`]: class declarations, subclassing, instantiation, statics
//! - [`datastore`]: snapshot stores, their update functions and checker
//! - [`associations`]: association realizations and retrieval functions
//! - [`modelio`]: the textual model language, scripts and snapshot dumps
//!
//! ```
//! use std::collections::BTreeMap;
//! use sysmod::associations::{link, rel_of};
//! use sysmod::{check_store, AssocDecl, AttrDecl, ClassDecl, Name, Store, Strategy, TypeName, Value, World};
//!
//! let world = World::default()
//!     .declare_class(ClassDecl::new("B"))?
//!     .declare_class(ClassDecl::new("A").attr(AttrDecl::mutable("r", TypeName::oid("B"))))?
//!     .declare_assoc(AssocDecl::new(
//!         "R",
//!         vec![Name::from("A"), Name::from("B")],
//!         Strategy::AttributeOwned { owner_index: 0, attr: Name::from("r") },
//!     ))?;
//! let (world, store, b) = world.instantiate(&Store::default(), &Name::from("B"), &BTreeMap::new())?;
//! let init = BTreeMap::from([(Name::from("r"), Value::Nil)]);
//! let (world, store, a) = world.instantiate(&store, &Name::from("A"), &init)?;
//! let (world, store) = link(&world, &store, &Name::from("R"), &[Value::Oid(a), Value::Oid(b)])?;
//! assert_eq!(rel_of(&world, &store, &Name::from("R"))?.len(), 1);
//! assert!(check_store(&world, &store).is_ok());
//! # Ok::<(), sysmod::ModelError>(())
//! ```

pub mod associations;
pub mod classes;
pub mod constructors;
pub mod datastore;
pub mod error;
pub mod modelio;
pub mod universe;

pub use associations::{AssocDecl, Strategy};
pub use classes::{AttrDecl, AttrKind, ClassDecl, World};
pub use datastore::{check_store, Report, Store, Violation, ViolationKind};
pub use error::{ModelError, Result};
pub use universe::{Loc, Name, Oid, TypeName, Value};
