//! Polynomial literals: `[±][coef][*][x[^k]]` terms, `coef` an integer or
//! `a/b`, with `s2` standing for √2. Accepts everything the polynomial
//! printer emits.

use num_bigint::BigInt;
use rlab_core::polycore::{DynPoly, Poly, QuadScalar, Rational, Scalar};
use thiserror::Error;

/// Highest exponent accepted in a literal.
pub const MAX_LITERAL_DEGREE: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct LiteralError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.src.chars().count() + 1, |&(col, _)| col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let n = w.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n].iter().map(|&(_, c)| c).eq(w.chars());
        if matches {
            self.pos += n;
        }
        matches
    }
}

/// One monomial: product of numbers, `s2` and powers of `x`.
fn term(lx: &mut Lexer<'_>, seen_s2: &mut bool) -> Result<(QuadScalar, usize), LiteralError> {
    let mut coeff = QuadScalar::one();
    let mut degree = 0usize;
    let mut factors = 0;
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = lx.digits().unwrap_or_default().parse().expect("digits");
                let value = if lx.eat('/') {
                    let Some(den) = lx.digits() else {
                        return lx.err("expected denominator after '/'");
                    };
                    let den: BigInt = den.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return lx.err("zero denominator");
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                coeff = coeff.mul_ref(&QuadScalar::from(value));
            }
            Some('s') => {
                if !lx.eat_word("s2") {
                    return lx.err("expected 's2'");
                }
                *seen_s2 = true;
                coeff = coeff.mul_ref(&QuadScalar::sqrt2());
            }
            Some('x') => {
                lx.pos += 1;
                let mut k = 1usize;
                if lx.eat('^') {
                    let Some(d) = lx.digits() else {
                        return lx.err("expected exponent after '^'");
                    };
                    k = match d.parse::<usize>() {
                        Ok(k) if k <= MAX_LITERAL_DEGREE => k,
                        _ => return lx.err(format!("exponent exceeds {MAX_LITERAL_DEGREE}")),
                    };
                }
                degree += k;
                if degree > MAX_LITERAL_DEGREE {
                    return lx.err(format!("degree exceeds {MAX_LITERAL_DEGREE}"));
                }
            }
            Some(c) if factors == 0 => return lx.err(format!("expected a term, found {c:?}")),
            None if factors == 0 => return lx.err("expected a term"),
            _ => return lx.err("expected a factor after '*'"),
        }
        factors += 1;
        // juxtaposition (`3x`, `1/2x^2`) or an explicit `*`
        if lx.eat('*') {
            continue;
        }
        match lx.peek() {
            Some('x') | Some('s') => continue,
            Some(c) if c.is_ascii_digit() => return lx.err("missing '*' between numbers"),
            _ => return Ok((coeff, degree)),
        }
    }
}

/// Parse a polynomial literal. The result is over Q unless `s2` occurs.
pub fn parse_poly_literal(text: &str) -> Result<DynPoly, LiteralError> {
    let mut lx = Lexer::new(text);
    let mut coeffs: Vec<QuadScalar> = Vec::new();
    let mut seen_s2 = false;
    let mut first = true;
    loop {
        let negative = if lx.eat('-') {
            true
        } else {
            let plus = lx.eat('+');
            if !first && !plus {
                return lx.err("expected '+' or '-'");
            }
            false
        };
        let (c, k) = term(&mut lx, &mut seen_s2)?;
        let c = if negative { -c } else { c };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, QuadScalar::zero());
        }
        coeffs[k] = coeffs[k].add_ref(&c);
        first = false;
        if lx.peek().is_none() {
            break;
        }
    }
    let poly = Poly::new(coeffs);
    if seen_s2 {
        Ok(DynPoly::Quadratic(poly))
    } else {
        Ok(DynPoly::Rational(poly.to_rational().expect("no s2 token")))
    }
}

/// Parse and require a rational polynomial.
pub fn parse_rational_literal(text: &str) -> Result<Poly<Rational>, LiteralError> {
    match parse_poly_literal(text)? {
        DynPoly::Rational(p) => Ok(p),
        DynPoly::Quadratic(_) => Err(LiteralError {
            column: text.find("s2").map_or(1, |i| text[..i].chars().count() + 1),
            message: "s2 is not allowed here".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rlab_core::polycore::{int, rat};

    fn r(text: &str) -> Poly<Rational> {
        parse_rational_literal(text).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(r("1+3x^2"), Poly::from_i64s(&[1, 0, 3]));
        assert!(r("0").is_zero());
        assert_eq!(r("1/2 + 1/2x^2"), Poly::new(vec![rat(1, 2), int(0), rat(1, 2)]));
        assert_eq!(r("-x"), Poly::from_i64s(&[0, -1]));
        assert_eq!(r("x^4 - 3x^2 + 1"), Poly::from_i64s(&[1, 0, -3, 0, 1]));
        assert_eq!(r("2*x*x + 1"), Poly::from_i64s(&[1, 0, 2]));
        assert_eq!(r(" 4 / 6 "), Poly::constant(rat(2, 3)));
    }

    #[test]
    fn sqrt_two() {
        let p = parse_poly_literal("s2*x + 1 - 2*s2").unwrap();
        let want = Poly::new(vec![
            QuadScalar::new(int(1), int(-2)),
            QuadScalar::new(int(0), int(1)),
        ]);
        assert_eq!(p, DynPoly::Quadratic(want));
        assert_eq!(
            parse_poly_literal("s2*s2").unwrap(),
            DynPoly::Quadratic(Poly::constant(QuadScalar::from(int(2))))
        );
        assert!(parse_rational_literal("1 + s2").is_err());
    }

    #[test]
    fn errors_carry_columns() {
        let col = |s: &str| parse_poly_literal(s).unwrap_err().column;
        assert_eq!(col(""), 1);
        assert_eq!(col("1 +"), 4);
        assert_eq!(col("1 + y"), 5);
        assert_eq!(col("1/0"), 4);
        assert_eq!(col("x^"), 3);
        assert_eq!(col("3 4"), 3);
        assert_eq!(col("x^99999"), 8);
        assert_eq!(col("sx"), 1);
        assert_eq!(col("2*"), 3);
    }
}
