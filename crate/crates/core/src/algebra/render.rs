use super::{NormalMonomial, Operator};
use crate::coeff::coefficient_term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
}

impl NormalMonomial {
    fn symbols(&self, latex: bool) -> Vec<String> {
        let mut out = Vec::new();
        let power = |base: String, e: i64| -> String {
            match (e, latex) {
                (1, _) => base,
                (_, false) => format!("{base}^{e}"),
                (_, true) => format!("{base}^{{{e}}}"),
            }
        };
        let indexed = |name: &str, i: usize| -> String {
            if latex {
                format!("{name}_{{{}}}", i + 1)
            } else {
                format!("{name}{}", i + 1)
            }
        };
        for (i, &e) in self.x.iter().enumerate() {
            if e > 0 {
                out.push(power(indexed("x", i), e as i64));
            }
        }
        if self.r != 0 {
            out.push(power("r".into(), self.r as i64));
        }
        for (i, &e) in self.d.iter().enumerate() {
            if e > 0 {
                out.push(power(indexed("D", i), e as i64));
            }
        }
        for (i, &s) in self.refl.iter().enumerate() {
            if s {
                out.push(indexed("R", i));
            }
        }
        out
    }

    fn display_degree(&self) -> u32 {
        self.x.iter().chain(self.d.iter()).map(|&e| e as u32).sum::<u32>() + self.r.unsigned_abs()
    }
}

impl Operator {
    /// Terms in display order: higher degree first, then the canonical order.
    fn display_terms(&self) -> Vec<(&NormalMonomial, &crate::coeff::Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.display_degree().cmp(&a.display_degree()).then_with(|| a.cmp(b)));
        v
    }

    /// Deterministic rendering. The plain form is accepted by the expression
    /// parser and evaluates back to the same operator.
    pub fn render(&self, format: Format) -> String {
        let latex = format == Format::Latex;
        if self.terms.is_empty() {
            return "0".into();
        }
        if let Some(s) = self.as_scalar() {
            return if latex { s.render_latex() } else { s.render_plain() };
        }
        let sep = if latex { " " } else { "*" };
        let mut out = String::new();
        for (idx, (m, c)) in self.display_terms().into_iter().enumerate() {
            let mono = m.symbols(latex);
            let (negative, body) = match c.single_term(latex) {
                Some((coeff, mut params)) => {
                    params.extend(mono);
                    coefficient_term(coeff, &params, latex)
                }
                None => {
                    let inner = if latex { c.render_latex() } else { c.render_plain() };
                    let (open, close) = if latex { ("\\left(", "\\right)") } else { ("(", ")") };
                    let mut parts = vec![format!("{open}{inner}{close}")];
                    parts.extend(mono);
                    (false, parts.join(sep))
                }
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}
