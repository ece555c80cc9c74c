use crate::logic::formula::{Connective, Formula};
use crate::logic::space::Space;

fn level(c: Connective) -> u8 {
    match c {
        Connective::Iff => 1,
        Connective::Implies
        | Connective::ImpliedBy
        | Connective::NotImplies
        | Connective::NotImpliedBy => 2,
        Connective::Or | Connective::Xor | Connective::Nor => 3,
        Connective::And | Connective::Nand => 4,
    }
}

fn right_assoc(c: Connective) -> bool {
    level(c) == 2
}

/// Renders a formula in the ASCII grammar accepted by
/// [`parse_formula`](crate::syntax::parse_formula), with as few parentheses
/// as the precedence rules allow.
///
/// Atoms on a binary variable print as `name` for `T` and `name=F` for `F`.
pub fn render(f: &Formula, space: &Space) -> String {
    let mut out = String::new();
    write(f, space, 0, &mut out);
    out
}

fn write(f: &Formula, space: &Space, min: u8, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom { variable, value } => match space.variable(*variable) {
            Some(v) if *value < v.size() => {
                out.push_str(v.name());
                if !(v.is_binary() && *value == 0) {
                    out.push('=');
                    out.push_str(&v.domain()[*value]);
                }
            }
            _ => out.push_str(&format!("#{variable}={value}")),
        },
        Formula::Not(g) => {
            out.push('!');
            write(g, space, 5, out);
        }
        Formula::Bin(c, g, h) => {
            let l = level(*c);
            let paren = l < min;
            if paren {
                out.push('(');
            }
            let (lmin, rmin) = if right_assoc(*c) { (l + 1, l) } else { (l, l + 1) };
            write(g, space, lmin, out);
            out.push(' ');
            out.push_str(c.symbol());
            out.push(' ');
            write(h, space, rmin, out);
            if paren {
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn minimal_parentheses() {
        let s = Space::binary(&["a", "b", "c"]).unwrap();
        for text in [
            "a & !b",
            "a -> b -> c",
            "(a -> b) -> c",
            "!(a | b) & c",
            "a | b ^ c",
            "a | (b ^ c)",
            "a=F <-> (b <-> c)",
            "a !& b !| c !-> a !<- b",
            "true & false",
        ] {
            let f = parse_formula(text, &s).unwrap();
            assert_eq!(render(&f, &s), text);
        }
    }
}
