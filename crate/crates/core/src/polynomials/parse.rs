use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::laurent::default_names;
use super::{IntPoly, LaurentPoly};
use crate::error::{Error, Result};

const MULTI: [char; 6] = ['x', 'y', 'z', 'u', 'v', 'w'];

struct Term {
    coeff: BigInt,
    /// (variable, exponent, position)
    powers: Vec<(char, i64, usize)>,
}

struct Scanner<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().ok()
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        let mut coeff = match self.integer() {
            Some(c) => c,
            None => BigInt::from(1),
        };
        let had_coeff = self.pos > 0 && self.chars[self.pos - 1].1.is_ascii_digit();
        let mut powers = Vec::new();
        loop {
            self.skip_ws();
            let mut star = false;
            if self.peek() == Some('*') {
                if !had_coeff && powers.is_empty() {
                    return self.err("'*' without a preceding factor");
                }
                star = true;
                self.pos += 1;
                self.skip_ws();
            }
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() => {
                    let at = self.offset();
                    self.pos += 1;
                    self.skip_ws();
                    let mut exp = 1i64;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let neg = match self.peek() {
                            Some('-') => {
                                self.pos += 1;
                                true
                            }
                            Some('+') => {
                                self.pos += 1;
                                false
                            }
                            _ => false,
                        };
                        let Some(e) = self.integer() else {
                            return self.err("expected an exponent after '^'");
                        };
                        let Ok(e) = i64::try_from(e) else {
                            return self.err("exponent out of range");
                        };
                        exp = if neg { -e } else { e };
                    }
                    powers.push((c, exp, at));
                }
                Some(c) if star && c.is_ascii_digit() => {
                    let Some(k) = self.integer() else { unreachable!() };
                    coeff *= k;
                }
                _ if star => return self.err("expected a factor after '*'"),
                _ => break,
            }
        }
        if !had_coeff && powers.is_empty() {
            return self.err("expected a term");
        }
        Ok(Term { coeff, powers })
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let mut t = self.term()?;
            if sign < 0 {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            self.skip_ws();
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                None => break,
                Some(c) => return self.err(alloc::format!("unexpected character '{c}'")),
            };
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses a Laurent polynomial in `t`, or in `x, y, z, u, v, w`.
///
/// Accepts forms such as `t^2 - 3t + 1`, `2*t^-1 + 5`, `1 + x + y`, `3xy^-2`.
pub fn parse_laurent(src: &str) -> Result<LaurentPoly> {
    let mut sc = Scanner::new(src);
    let terms = sc.poly()?;
    let mut uses_t = false;
    let mut max_multi = None;
    for t in &terms {
        for &(c, _, at) in &t.powers {
            if c == 't' {
                uses_t = true;
            } else if let Some(i) = MULTI.iter().position(|&m| m == c) {
                max_multi = max_multi.max(Some(i));
            } else {
                return Err(Error::Parse {
                    position: at,
                    message: alloc::format!("unknown variable '{c}'"),
                });
            }
        }
    }
    if uses_t && max_multi.is_some() {
        return Err(Error::Parse {
            position: 0,
            message: "cannot mix 't' with multivariate names".to_string(),
        });
    }
    let nvars = if uses_t { 1 } else { max_multi.map_or(0, |i| i + 1) };
    let mut out = LaurentPoly::zero_in(nvars);
    for t in terms {
        let mut e = vec![0i64; nvars];
        for (c, k, _) in t.powers {
            let idx = if c == 't' { 0 } else { MULTI.iter().position(|&m| m == c).unwrap_or(0) };
            e[idx] += k;
        }
        out.add_term(e, t.coeff);
    }
    Ok(out)
}

/// Parses an ordinary polynomial in one variable (no negative powers).
pub fn parse_poly(src: &str) -> Result<IntPoly> {
    let lp = parse_laurent(src)?;
    if lp.nvars() > 1 {
        return Err(Error::Parse {
            position: 0,
            message: alloc::format!("expected one variable, found {}", lp.nvars()),
        });
    }
    let (q, shift) = lp.to_int_poly()?;
    if shift < 0 && !q.is_zero() {
        return Err(Error::Parse {
            position: 0,
            message: "negative powers are not allowed here".to_string(),
        });
    }
    Ok(q.shift(shift as usize))
}

/// Canonical text that [`parse_laurent`] reads back to the same polynomial.
pub fn format_laurent(p: &LaurentPoly) -> String {
    p.display_with(&default_names(p.nvars()))
}
