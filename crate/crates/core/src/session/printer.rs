use std::fmt::Write;

use super::ast::*;

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, 0);
    s
}

// `ctx` is the binding strength required of `e` by its parent.
fn write_expr(out: &mut String, e: &Expr, ctx: u8) {
    match e {
        Expr::Num(n) => write!(out, "{n}").unwrap(),
        Expr::Name(s, _) => out.push_str(s),
        Expr::Neg(inner) => {
            let paren = ctx > 3;
            if paren {
                out.push('(');
            }
            out.push('-');
            write_expr(out, inner, 3);
            if paren {
                out.push(')');
            }
        }
        Expr::Bin(op, a, b) => {
            let prec = op.precedence();
            let paren = prec < ctx;
            if paren {
                out.push('(');
            }
            if *op == BinOp::Caret {
                // right associative, atoms on the left
                write_expr(out, a, prec + 1);
                out.push('^');
                write_expr(out, b, prec);
            } else {
                write_expr(out, a, prec);
                write!(out, " {} ", op.symbol()).unwrap();
                write_expr(out, b, prec + 1);
            }
            if paren {
                out.push(')');
            }
        }
    }
}

fn exprs(v: &[Expr]) -> String {
    v.iter().map(print_expr).collect::<Vec<_>>().join(", ")
}

fn assigns(v: &[(String, Expr)]) -> String {
    v.iter().map(|(n, e)| format!("{n} = {}", print_expr(e))).collect::<Vec<_>>().join(", ")
}

pub fn print_session(s: &SessionFile) -> String {
    let mut out = String::new();
    for d in &s.decls {
        match d {
            Decl::Space(d) => {
                writeln!(out, "space {} {{", d.name).unwrap();
                writeln!(out, "    vars {};", d.vars.join(" ")).unwrap();
                if !d.eqs.is_empty() {
                    writeln!(out, "    eq {};", exprs(&d.eqs)).unwrap();
                }
                if let Some(n) = &d.nzd {
                    writeln!(out, "    nzd {};", print_expr(n)).unwrap();
                }
                out.push_str("}\n");
            }
            Decl::Form(d) => writeln!(out, "form {} on {} = {};", d.name, d.space, print_expr(&d.expr)).unwrap(),
            Decl::Chart(d) => {
                writeln!(out, "chart {} from {} {{", d.name, d.parent).unwrap();
                writeln!(out, "    vars {};", d.vars.join(" ")).unwrap();
                if !d.eqs.is_empty() {
                    writeln!(out, "    eq {};", exprs(&d.eqs)).unwrap();
                }
                if !d.map.is_empty() {
                    writeln!(out, "    map {};", assigns(&d.map)).unwrap();
                }
                if !d.exceptional.is_empty() {
                    writeln!(out, "    exceptional {};", exprs(&d.exceptional)).unwrap();
                }
                out.push_str("}\n");
            }
            Decl::Resolution(d) => {
                writeln!(out, "resolution {} of {} {{ charts {}; }}", d.name, d.space, d.charts.join(" ")).unwrap()
            }
            Decl::Relation(d) => writeln!(
                out,
                "relation {} for {} in Sym{} {{ {} = 0; }}",
                d.name,
                d.form,
                d.degree,
                print_expr(&d.expr)
            )
            .unwrap(),
            Decl::Map(d) => {
                writeln!(out, "map {} from {} to {} {{ {}; }}", d.name, d.source, d.target, assigns(&d.images)).unwrap()
            }
            Decl::Graph(d) => writeln!(
                out,
                "graph {} of {} {{ fiber {}; }}",
                d.name,
                d.space,
                d.fiber.as_deref().unwrap_or("auto")
            )
            .unwrap(),
        }
    }
    out
}
