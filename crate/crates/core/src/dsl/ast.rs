use super::lexer::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Var(String),
    Lit(u8),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(u64),
    /// Identifier with optional index list: `M[i]`, `P0`, `I`, `h`, `m`.
    Name(String, Vec<Index>),
    Eps(Vec<Index>),
    Delta(Vec<Index>),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Tensor(Vec<Expr>),
    /// Parenthesized subexpression; a scope for index summation.
    Group(Box<Expr>),
    /// `[x, y]` commutator.
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenRef {
    pub name: String,
    pub indices: Vec<Index>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyDecl {
    pub name: String,
    pub dims: Vec<u8>,
    pub grouplike: bool,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Section {
    Params(Vec<(String, Span)>),
    Generators(Vec<FamilyDecl>),
    Order(Vec<(String, Span)>),
    Relation(Expr, Expr),
    Coproduct(GenRef, Expr),
    Counit(GenRef, Expr),
    Antipode(GenRef, Expr),
    Expansion(GenRef, Expr),
    Orthogonal(String, Span),
    /// `NAME = expr;` inside an `elements` block.
    Item(String, Expr, Span),
    /// `key: ident ...;` settings such as `base:` or `kind:`.
    Setting(String, Vec<(String, Span)>, Span),
    Map(GenRef, Expr),
    Action(GenRef, &'static str, GenRef, Expr),
    Coaction(GenRef, Expr),
    Bracket(GenRef, GenRef, Expr),
    Dual(GenRef, String, Span),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Presentation,
    Elements,
    Bicross,
    Comodule,
    Lie,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decl {
    pub kind: DeclKind,
    pub name: String,
    /// `over NAME` for element lists.
    pub over: Option<(String, Span)>,
    pub sections: Vec<(Section, Span)>,
    pub span: Span,
}
