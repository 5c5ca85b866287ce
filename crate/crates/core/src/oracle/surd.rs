//! Evaluator for the closed-form entries of the reference tables.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := integer | 'i' | 'kappa' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `sqrt` only accepts non-negative real arguments and `kappa` must be bound
//! by the caller.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct SurdError(pub String);

impl std::fmt::Display for SurdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn evaluate(src: &str, kappa: Option<Complex64>) -> Result<Complex64, SurdError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, kappa, src };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(SurdError(format!("trailing input in {src:?}")));
    }
    Ok(v)
}

/// Real-valued evaluation; rejects expressions with an imaginary part.
pub fn evaluate_real(src: &str) -> Result<f64, SurdError> {
    let v = evaluate(src, None)?;
    if v.im != 0.0 {
        return Err(SurdError(format!("{src:?} is not real")));
    }
    Ok(v.re)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u32),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, SurdError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Token::Int(s.parse().map_err(|_| SurdError(format!("bad integer {s:?}")))?));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphabetic() {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Token::Op(c));
            k += 1;
        } else {
            return Err(SurdError(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    kappa: Option<Complex64>,
    src: &'a str,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect_op(&mut self, op: char) -> Result<(), SurdError> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(SurdError(format!("expected {op:?} in {:?}", self.src)))
        }
    }

    fn expr(&mut self) -> Result<Complex64, SurdError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Complex64, SurdError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '/' && rhs.norm() == 0.0 {
                return Err(SurdError(format!("division by zero in {:?}", self.src)));
            }
            acc = if op == '*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Complex64, SurdError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Complex64, SurdError> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| SurdError(format!("unexpected end of {:?}", self.src)))?;
        self.pos += 1;
        match tok {
            Token::Int(n) => Ok(Complex64::new(n as f64, 0.0)),
            Token::Op('(') => {
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Token::Ident(name) => match name.as_str() {
                "i" => Ok(Complex64::new(0.0, 1.0)),
                "kappa" => self.kappa.ok_or_else(|| SurdError("kappa used before it is defined".into())),
                "sqrt" => {
                    self.expect_op('(')?;
                    let v = self.expr()?;
                    self.expect_op(')')?;
                    if v.im != 0.0 || v.re < 0.0 {
                        return Err(SurdError(format!("sqrt of {v} in {:?}", self.src)));
                    }
                    Ok(Complex64::new(v.re.sqrt(), 0.0))
                }
                other => Err(SurdError(format!("unknown symbol {other:?} in {:?}", self.src))),
            },
            Token::Op(c) => Err(SurdError(format!("unexpected {c:?} in {:?}", self.src))),
        }
    }
}
