//! Recursive-descent parser for models and scripts.
//!
//! ```text
//! model    := decl*
//! decl     := "class" NAME ("extends" NAME ("," NAME)*)? ("subclassOf" NAME ("," NAME)*)?
//!             "{" (attr ","?)* "}"
//!           | "assoc" NAME "(" NAME ("," NAME)+ ")" "via" strategy
//!           | "static" NAME ":" type "=" literal
//! attr     := NAME ":" "loc"? type
//! type     := "Int" | "Bool" | "Boolean" | "Void" | "Ref" type
//!           | "Set" "(" type ")" | "List" "(" type ")" | "Loc" "(" type ")"
//!           | "Class" "(" NAME ")" | "Prod" "(" (type ("," type)*)? ")"
//!           | "Rec" "{" (NAME ":" type ("," NAME ":" type)*)? "}" | NAME
//! strategy := "attribute" NAME "." NAME | "mediator" NAME
//!           | "redundant" NAME "." NAME "," NAME "." NAME
//!           | "ordered" NAME "." NAME | "qualified" NAME "by" type
//!
//! script   := (stmt ";"?)*
//! stmt     := "new" NAME ":" NAME "{" (NAME "=" literal ("," NAME "=" literal)* ","?)? "}"
//!           | "set" NAME "." NAME "=" literal
//!           | "link" NAME "(" literal ("," literal)* ")"
//!           | "assert" "rel" NAME "not"? "contains" "(" literal ("," literal)* ")"
//!           | "assert" NAME "." NAME "==" literal
//!           | "check" | "dump"
//! literal  := INT | "true" | "false" | "void" | "nil" | "unknown" | NAME
//!           | "[" literals? "]" | "{" literals? "}" | "rec" "{" (NAME "=" literal ","?)* "}"
//! ```
//!
//! A bare class name in a type position denotes the identifiers of that
//! class and all its subclasses.

use crate::classes::{AttrDecl, ClassDecl};
use crate::universe::{Name, TypeName};

use super::lexer::{tokenize, Diagnostic, Pos, Tok};

/// Nesting limit for types and literals.
const MAX_DEPTH: usize = 64;

const TYPE_KEYWORDS: &[&str] = &[
    "Int", "Bool", "Boolean", "Void", "Ref", "Set", "List", "Loc", "Class", "Prod", "Rec",
];
const LITERAL_KEYWORDS: &[&str] = &["true", "false", "void", "nil", "unknown", "rec"];
const SCRIPT_KEYWORDS: &[&str] = &["new", "set", "link", "assert", "rel", "not", "contains", "check", "dump"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    Void,
    Nil,
    Unknown,
    Var(Name),
    List(Vec<Literal>),
    Set(Vec<Literal>),
    Rec(Vec<(Name, Literal)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategySyntax {
    Attribute { class: Name, attr: Name },
    Mediator { class: Name },
    Redundant {
        direct_class: Name,
        direct_attr: Name,
        collection_class: Name,
        collection_attr: Name,
    },
    Ordered { class: Name, attr: Name },
    Qualified { class: Name, qualifier: TypeName },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Class(ClassDecl),
    Assoc {
        name: Name,
        signature: Vec<Name>,
        strategy: StrategySyntax,
    },
    Static {
        name: Name,
        ty: TypeName,
        value: Literal,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positioned<T> {
    pub pos: Pos,
    pub item: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    New {
        var: Name,
        class: Name,
        inits: Vec<(Name, Literal)>,
    },
    Set {
        var: Name,
        attr: Name,
        value: Literal,
    },
    Link {
        assoc: Name,
        args: Vec<Literal>,
    },
    AssertRel {
        assoc: Name,
        negated: bool,
        tuple: Vec<Literal>,
    },
    AssertVal {
        var: Name,
        attr: Name,
        value: Literal,
    },
    Check,
    Dump,
}

pub type Model = Vec<Positioned<Decl>>;
pub type Script = Vec<Positioned<Stmt>>;

pub fn parse_model(src: &str) -> Result<Model, Diagnostic> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.decl()?);
    }
    Ok(out)
}

pub fn parse_script(src: &str) -> Result<Script, Diagnostic> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.stmt()?);
        p.eat_punct(";");
    }
    Ok(out)
}

/// Parses a single type, e.g. for tests and tools.
pub fn parse_type(src: &str) -> Result<TypeName, Diagnostic> {
    let mut p = Parser::new(src)?;
    let t = p.ty(0)?;
    p.expect_eof()?;
    Ok(t)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, Diagnostic> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, Diagnostic> {
        Err(Diagnostic {
            pos: self.pos(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn fail<T>(&self, pos: Pos, message: String) -> Result<T, Diagnostic> {
        Err(Diagnostic {
            pos,
            message,
            expected: Vec::new(),
        })
    }

    fn expect_eof(&self) -> Result<(), Diagnostic> {
        if self.at_eof() {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Diagnostic> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn punct(&mut self, p: &str) -> Result<(), Diagnostic> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.error(&[&format!("`{p}`")])
        }
    }

    /// An identifier that is none of `reserved`.
    fn name_excluding(&mut self, what: &str, reserved: &[&[&str]]) -> Result<Name, Diagnostic> {
        let pos = self.pos();
        match self.peek() {
            Tok::Ident(s) => {
                if reserved.iter().any(|set| set.contains(&s.as_str())) {
                    return self.fail(pos, format!("`{s}` is reserved and cannot be used as {what}"));
                }
                let name = Name::new(s).expect("lexer yields identifiers");
                self.bump();
                Ok(name)
            }
            _ => self.error(&[what]),
        }
    }

    fn name(&mut self) -> Result<Name, Diagnostic> {
        self.name_excluding("a name", &[])
    }

    fn class_name(&mut self) -> Result<Name, Diagnostic> {
        self.name_excluding("a class name", &[TYPE_KEYWORDS])
    }

    fn var_name(&mut self) -> Result<Name, Diagnostic> {
        self.name_excluding("a variable", &[SCRIPT_KEYWORDS, LITERAL_KEYWORDS])
    }

    fn name_list(&mut self) -> Result<Vec<Name>, Diagnostic> {
        let mut out = vec![self.class_name()?];
        while self.eat_punct(",") {
            out.push(self.class_name()?);
        }
        Ok(out)
    }

    fn decl(&mut self) -> Result<Positioned<Decl>, Diagnostic> {
        let pos = self.pos();
        let item = if self.eat_keyword("class") {
            Decl::Class(self.class_decl()?)
        } else if self.eat_keyword("assoc") {
            self.assoc_decl()?
        } else if self.eat_keyword("static") {
            let name = self.name()?;
            self.punct(":")?;
            let ty = self.ty(0)?;
            self.punct("=")?;
            let value = self.literal(0)?;
            Decl::Static { name, ty, value }
        } else {
            return self.error(&["`class`", "`assoc`", "`static`"]);
        };
        Ok(Positioned { pos, item })
    }

    fn class_decl(&mut self) -> Result<ClassDecl, Diagnostic> {
        let mut decl = ClassDecl::new(self.class_name()?);
        if self.eat_keyword("extends") {
            decl.supers = self.name_list()?;
        }
        if self.eat_keyword("subclassOf") {
            decl.subclass_of = self.name_list()?;
        }
        self.punct("{")?;
        while !self.eat_punct("}") {
            if !matches!(self.peek(), Tok::Ident(_)) {
                return self.error(&["an attribute", "`}`"]);
            }
            let name = self.name()?;
            self.punct(":")?;
            let attr = if self.eat_keyword("loc") {
                AttrDecl::mutable(name, self.ty(0)?)
            } else {
                AttrDecl::constant(name, self.ty(0)?)
            };
            decl.attrs.push(attr);
            self.eat_punct(",");
        }
        Ok(decl)
    }

    fn qualified_attr(&mut self) -> Result<(Name, Name), Diagnostic> {
        let class = self.class_name()?;
        self.punct(".")?;
        Ok((class, self.name()?))
    }

    fn assoc_decl(&mut self) -> Result<Decl, Diagnostic> {
        let name = self.name()?;
        self.punct("(")?;
        let signature = self.name_list()?;
        if signature.len() < 2 {
            return self.error(&["`,`"]);
        }
        self.punct(")")?;
        self.keyword("via")?;
        let strategy = if self.eat_keyword("attribute") {
            let (class, attr) = self.qualified_attr()?;
            StrategySyntax::Attribute { class, attr }
        } else if self.eat_keyword("mediator") {
            StrategySyntax::Mediator {
                class: self.class_name()?,
            }
        } else if self.eat_keyword("redundant") {
            let (direct_class, direct_attr) = self.qualified_attr()?;
            self.punct(",")?;
            let (collection_class, collection_attr) = self.qualified_attr()?;
            StrategySyntax::Redundant {
                direct_class,
                direct_attr,
                collection_class,
                collection_attr,
            }
        } else if self.eat_keyword("ordered") {
            let (class, attr) = self.qualified_attr()?;
            StrategySyntax::Ordered { class, attr }
        } else if self.eat_keyword("qualified") {
            let class = self.class_name()?;
            self.keyword("by")?;
            StrategySyntax::Qualified {
                class,
                qualifier: self.ty(0)?,
            }
        } else {
            return self.error(&["`attribute`", "`mediator`", "`redundant`", "`ordered`", "`qualified`"]);
        };
        Ok(Decl::Assoc {
            name,
            signature,
            strategy,
        })
    }

    fn depth_guard(&self, depth: usize) -> Result<(), Diagnostic> {
        if depth > MAX_DEPTH {
            self.fail(self.pos(), format!("nesting deeper than {MAX_DEPTH}"))
        } else {
            Ok(())
        }
    }

    fn parenthesized_type(&mut self, depth: usize) -> Result<TypeName, Diagnostic> {
        self.punct("(")?;
        let t = self.ty(depth + 1)?;
        self.punct(")")?;
        Ok(t)
    }

    fn ty(&mut self, depth: usize) -> Result<TypeName, Diagnostic> {
        self.depth_guard(depth)?;
        let pos = self.pos();
        let Tok::Ident(word) = self.peek().clone() else {
            return self.error(&["a type"]);
        };
        self.bump();
        Ok(match word.as_str() {
            "Int" => TypeName::int(),
            "Bool" | "Boolean" => TypeName::Basic(Name::from(word.as_str())),
            "Void" => TypeName::void(),
            "Ref" => TypeName::reference(self.ty(depth + 1)?),
            "Set" => TypeName::set(self.parenthesized_type(depth)?),
            "List" => TypeName::list(self.parenthesized_type(depth)?),
            "Loc" => TypeName::loc(self.parenthesized_type(depth)?),
            "Class" => {
                self.punct("(")?;
                let c = self.class_name()?;
                self.punct(")")?;
                TypeName::Class(c)
            }
            "Prod" => {
                self.punct("(")?;
                let mut parts = Vec::new();
                if !self.eat_punct(")") {
                    parts.push(self.ty(depth + 1)?);
                    while self.eat_punct(",") {
                        parts.push(self.ty(depth + 1)?);
                    }
                    self.punct(")")?;
                }
                TypeName::Prod(parts)
            }
            "Rec" => {
                self.punct("{")?;
                let mut fields = Vec::new();
                if !self.eat_punct("}") {
                    loop {
                        let fpos = self.pos();
                        let n = self.name()?;
                        self.punct(":")?;
                        fields.push((fpos, n, self.ty(depth + 1)?));
                        if !self.eat_punct(",") {
                            break;
                        }
                    }
                    self.punct("}")?;
                }
                let mut map = std::collections::BTreeMap::new();
                for (fpos, n, t) in fields {
                    if map.insert(n.clone(), t).is_some() {
                        return self.fail(fpos, format!("duplicate record field `{n}`"));
                    }
                }
                TypeName::Rec(map)
            }
            _ => TypeName::Oid(Name::new(&word).map_err(|_| Diagnostic {
                pos,
                message: "bad name".into(),
                expected: Vec::new(),
            })?),
        })
    }

    fn literal_list(&mut self, close: &str, depth: usize) -> Result<Vec<Literal>, Diagnostic> {
        let mut out = Vec::new();
        while !self.eat_punct(close) {
            out.push(self.literal(depth + 1)?);
            if !self.eat_punct(",") {
                self.punct(close)?;
                break;
            }
        }
        Ok(out)
    }

    fn literal(&mut self, depth: usize) -> Result<Literal, Diagnostic> {
        self.depth_guard(depth)?;
        match self.peek().clone() {
            Tok::Int(z) => {
                self.bump();
                Ok(Literal::Int(z))
            }
            Tok::Punct("[") => {
                self.bump();
                Ok(Literal::List(self.literal_list("]", depth)?))
            }
            Tok::Punct("{") => {
                self.bump();
                Ok(Literal::Set(self.literal_list("}", depth)?))
            }
            Tok::Ident(word) => {
                let lit = match word.as_str() {
                    "true" => Literal::Bool(true),
                    "false" => Literal::Bool(false),
                    "void" => Literal::Void,
                    "nil" => Literal::Nil,
                    "unknown" => Literal::Unknown,
                    "rec" => {
                        self.bump();
                        self.punct("{")?;
                        let mut fields = Vec::new();
                        while !self.eat_punct("}") {
                            let n = self.name()?;
                            self.punct("=")?;
                            fields.push((n, self.literal(depth + 1)?));
                            self.eat_punct(",");
                        }
                        return Ok(Literal::Rec(fields));
                    }
                    _ => return Ok(Literal::Var(self.var_name()?)),
                };
                self.bump();
                Ok(lit)
            }
            _ => self.error(&["a literal"]),
        }
    }

    fn tuple(&mut self) -> Result<Vec<Literal>, Diagnostic> {
        self.punct("(")?;
        let mut out = vec![self.literal(0)?];
        while self.eat_punct(",") {
            out.push(self.literal(0)?);
        }
        self.punct(")")?;
        Ok(out)
    }

    fn member(&mut self) -> Result<(Name, Name), Diagnostic> {
        let var = self.var_name()?;
        self.punct(".")?;
        Ok((var, self.name()?))
    }

    fn stmt(&mut self) -> Result<Positioned<Stmt>, Diagnostic> {
        let pos = self.pos();
        let item = if self.eat_keyword("new") {
            let var = self.var_name()?;
            self.punct(":")?;
            let class = self.class_name()?;
            self.punct("{")?;
            let mut inits = Vec::new();
            while !self.eat_punct("}") {
                let attr = self.name()?;
                self.punct("=")?;
                inits.push((attr, self.literal(0)?));
                if !self.eat_punct(",") {
                    self.punct("}")?;
                    break;
                }
            }
            Stmt::New { var, class, inits }
        } else if self.eat_keyword("set") {
            let (var, attr) = self.member()?;
            self.punct("=")?;
            Stmt::Set {
                var,
                attr,
                value: self.literal(0)?,
            }
        } else if self.eat_keyword("link") {
            let assoc = self.name()?;
            Stmt::Link {
                assoc,
                args: self.tuple()?,
            }
        } else if self.eat_keyword("assert") {
            if self.eat_keyword("rel") {
                let assoc = self.name()?;
                let negated = self.eat_keyword("not");
                self.keyword("contains")?;
                Stmt::AssertRel {
                    assoc,
                    negated,
                    tuple: self.tuple()?,
                }
            } else {
                let (var, attr) = self.member()?;
                self.punct("==")?;
                Stmt::AssertVal {
                    var,
                    attr,
                    value: self.literal(0)?,
                }
            }
        } else if self.eat_keyword("check") {
            Stmt::Check
        } else if self.eat_keyword("dump") {
            Stmt::Dump
        } else {
            return self.error(&["`new`", "`set`", "`link`", "`assert`", "`check`", "`dump`"]);
        };
        Ok(Positioned { pos, item })
    }
}
