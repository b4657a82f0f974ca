use num_bigint::BigInt;

use super::lexer::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `^`: a power when the right operand is an integer, a wedge otherwise.
    Caret,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Caret => "^",
        }
    }

    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Caret => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Expr {
    Num(BigInt),
    Name(String, Pos),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

/// Structural equality ignoring source positions.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expr::Num(a), Expr::Num(b)) => a == b,
            (Expr::Name(a, _), Expr::Name(b, _)) => a == b,
            (Expr::Neg(a), Expr::Neg(b)) => a == b,
            (Expr::Bin(o, a, b), Expr::Bin(p, c, d)) => o == p && a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Name(_, p) => *p,
            Expr::Neg(e) => e.pos(),
            Expr::Bin(_, a, _) => a.pos(),
            Expr::Num(_) => Pos::default(),
        }
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub vars: Vec<String>,
    pub eqs: Vec<Expr>,
    pub nzd: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormDecl {
    pub name: String,
    pub space: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDecl {
    pub name: String,
    pub parent: String,
    pub vars: Vec<String>,
    pub eqs: Vec<Expr>,
    /// Images of the parent's variables.
    pub map: Vec<(String, Expr)>,
    pub exceptional: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDecl {
    pub name: String,
    pub space: String,
    pub charts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub name: String,
    /// The form standing for the unknown.
    pub form: String,
    pub degree: u32,
    /// Left side minus right side.
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecl {
    pub name: String,
    pub space: String,
    /// `None` asks for an automatic choice.
    pub fiber: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Space(SpaceDecl),
    Form(FormDecl),
    Chart(ChartDecl),
    Resolution(ResolutionDecl),
    Relation(RelationDecl),
    Map(MapDecl),
    Graph(GraphDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Space(d) => &d.name,
            Decl::Form(d) => &d.name,
            Decl::Chart(d) => &d.name,
            Decl::Resolution(d) => &d.name,
            Decl::Relation(d) => &d.name,
            Decl::Map(d) => &d.name,
            Decl::Graph(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Space(_) => "space",
            Decl::Form(_) => "form",
            Decl::Chart(_) => "chart",
            Decl::Resolution(_) => "resolution",
            Decl::Relation(_) => "relation",
            Decl::Map(_) => "map",
            Decl::Graph(_) => "graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SessionFile {
    pub decls: Vec<Decl>,
}

impl SessionFile {
    pub fn count(&self, kind: &str) -> usize {
        self.decls.iter().filter(|d| d.kind() == kind).count()
    }
}
