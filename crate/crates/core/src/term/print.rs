use super::Term;

const BASE_NAMES: &[&str] = &["x", "y", "z", "w", "u", "v", "a", "b", "c", "d"];

fn fresh(scope: &[String], avoid: &[String]) -> String {
    let taken = |s: &str| scope.iter().any(|n| n == s) || avoid.iter().any(|n| n == s);
    for round in 0.. {
        for base in BASE_NAMES {
            let name = if round == 0 {
                (*base).to_string()
            } else {
                format!("{base}{round}")
            };
            if !taken(&name) {
                return name;
            }
        }
    }
    unreachable!()
}

struct Printer<'a> {
    scope: Vec<String>,
    avoid: &'a [String],
    out: String,
}

impl Printer<'_> {
    fn term(&mut self, t: &Term) {
        match t {
            Term::Lam(_) => {
                let mut body = t;
                let mut k = 0;
                while let Term::Lam(b) = body {
                    let name = fresh(&self.scope, self.avoid);
                    self.out.push('\\');
                    self.out.push_str(&name);
                    self.out.push('.');
                    self.scope.push(name);
                    body = b;
                    k += 1;
                }
                self.out.push(' ');
                self.term(body);
                self.scope.truncate(self.scope.len() - k);
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                self.atom(head);
                for a in args {
                    self.out.push(' ');
                    self.atom(a);
                }
            }
            _ => self.atom(t),
        }
    }

    fn atom(&mut self, t: &Term) {
        match t {
            Term::Var(k) => {
                let name = self
                    .scope
                    .len()
                    .checked_sub(k + 1)
                    .map(|p| self.scope[p].clone())
                    .unwrap_or_else(|| format!("?{k}"));
                self.out.push_str(&name);
            }
            Term::Const(name, _) => {
                self.out.push('#');
                self.out.push_str(name);
            }
            _ => {
                self.out.push('(');
                self.term(t);
                self.out.push(')');
            }
        }
    }
}

/// Prints `t` in the context named by `context_names` (left to right).
/// Binder names are chosen fresh with respect to every name in scope.
pub fn print(t: &Term, context_names: &[impl AsRef<str>]) -> String {
    let ctx: Vec<String> = context_names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut p = Printer {
        scope: ctx.clone(),
        avoid: &ctx,
        out: String::new(),
    };
    p.term(t);
    p.out
}

pub fn print_closed(t: &Term) -> String {
    print(t, &[] as &[&str])
}
