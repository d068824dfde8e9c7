//! The printed example quartics, transcribed as text, and a parser for them.

use hexforge_core::construct::Sign;
use hexforge_core::field::{Field, PrimeField, RatFunc, Rationals};
use hexforge_core::json::FieldSpec;
use hexforge_core::poly::{Monomial, TernaryForm, UniPoly};

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub label: &'static str,
    pub field: FieldSpec,
    /// The sextic this quartic was printed for, as integer coefficients
    /// (over `F_p(t)`, as polynomials in `t`) from degree zero upward.
    pub sextic: &'static str,
    /// A square root of the sextic's constant term.
    pub root: &'static str,
    /// The sign of the root the quartic was printed for, when stated.
    pub stated_sign: Option<Sign>,
    pub quartic: &'static str,
}

const EX1_F: &str = "25 - 150T + 335T^2 - 340T^3 + 152T^4 - 24T^5 + T^6";
const EX2_F: &str = "(t^12+2t^6+1) + (2t^10+2t^4)T + (t^8+t^6+2t^4+2t^2)T^2 + (2t^6+2t^4+t^2+1)T^3 + (2t^4+2t^2)T^4 + T^6";
const EX3_F: &str = "1 - 5T + 9T^3 - 2T^4 - 3T^5 + T^6";
// (2t^7+t^4+t^2+1)(T^3+t^2T^2) + (t^7+t^4+t^2+1)^2, expanded over F_3.
const EX4_F: &str = "(t^14+2t^11+2t^9+t^8+2t^7+2t^6+2t^2+1) + (2t^9+t^6+t^4+t^2)T^2 + t^4T^4 + (2t^7+t^4+t^2+1)T^3 + 2t^2T^5 + T^6";

pub const FIXTURES: &[FixtureEntry] = &[
    FixtureEntry {
        label: "example1_plus",
        field: FieldSpec::Rationals,
        sextic: EX1_F,
        root: "5",
        stated_sign: Some(Sign::Plus),
        quartic: "-2T0^3T2 + 37T0^2T1T2 + 67T0^2T2^2 + 2T0T1^3 - 10T0T1^2T2 + 114T0T1T2^2 + 166T0T2^3 + 4T1^4 \
                  - 168T1^3T2 + 42T1^2T2^2 + 369T1T2^3 - 45T2^4",
    },
    FixtureEntry {
        label: "example1_minus",
        field: FieldSpec::Rationals,
        sextic: EX1_F,
        root: "5",
        stated_sign: Some(Sign::Minus),
        quartic: "-2T0^3T2 + 43T0^2T1T2 + 480T0^2T2^2 + 2T0T1^3 - 36T0T1^2T2 - 2460T0T1T2^2 + 8700T0T2^3 \
                  + 2T1^4 - 189T1^3T2 + 5170T1^2T2^2 - 31255T1T2^3 + 40250T2^4",
    },
    FixtureEntry {
        label: "example2_first",
        field: FieldSpec::RationalFunctions(3),
        sextic: EX2_F,
        root: "t^6+1",
        stated_sign: None,
        quartic: "T0^4 + 2T0^3T1 + (2t^6+t^4+t^2)T0^3T2 + (t^4+t^2+1)T0^2T1T2 + (2t^4+t^2+2)T0^2T2^2 \
                  + T0T1^2T2 + (2t^6+2t^4+2)T0T1T2^2 + (t^10+t^8+2t^4+2)T0T2^3 + T1^3T2 \
                  + (2t^4+2)T1^2T2^2 + (t^8+t^6+t^2+1)T1T2^3 + 2t^2T2^4",
    },
    FixtureEntry {
        label: "example2_second",
        field: FieldSpec::RationalFunctions(3),
        sextic: EX2_F,
        root: "t^6+1",
        stated_sign: None,
        quartic: "T0^4 + 2T0^3T1 + (t^6+t^4+t^2+2)T0^3T2 + (t^4+t^2+1)T0^2T1T2 \
                  + (2t^10+2t^8+2t^6+t^4+1)T0^2T2^2 + T0T1^2T2 + (2t^6+2t^4+2)T0T1T2^2 \
                  + (t^12+2t^10+2t^2+1)T0T2^3 + T1^3T2 + (2t^6+2t^4+1)T1^2T2^2 \
                  + (t^10+2t^8+2t^6+t^4+2t^2+2)T1T2^3 + (2t^16+2t^12+t^10+t^6+2t^4+2t^2+2)T2^4",
    },
    FixtureEntry {
        label: "example3_plus",
        field: FieldSpec::Rationals,
        sextic: EX3_F,
        root: "1",
        stated_sign: Some(Sign::Plus),
        quartic: "-T0^3T2 - 2T0^2T1T2 + 14T0^2T2^2 - 2T0T1^3 + 9T0T1^2T2 + 4T0T1T2^2 - 7T0T2^3 + T1^4 - 2T1^3T2 \
                  - 7T1^2T2^2 + 3T2^4",
    },
    FixtureEntry {
        label: "example3_minus",
        field: FieldSpec::Rationals,
        sextic: EX3_F,
        root: "1",
        stated_sign: Some(Sign::Minus),
        quartic: "-T0^3T2 - 2T0^2T1T2 + 6T0^2T2^2 - 2T0T1^3 + 9T0T1^2T2 + 12T0T1T2^2 - 3T0T2^3 + T1^4 + 6T1^3T2 \
                  + 5T1^2T2^2 - 4T1T2^3 - T2^4",
    },
    FixtureEntry {
        label: "example4_first",
        field: FieldSpec::RationalFunctions(3),
        sextic: EX4_F,
        root: "t^7+t^4+t^2+1",
        stated_sign: None,
        quartic: "T0^4 + 2T0^3T1 + (2t^7+2t^4)T0^3T2 + (t^2+1)T0^2T1T2 + (t^9+2t^7+2t^4+2t^2+2)T0^2T2^2 \
                  + (2t^2+1)T0T1^2T2 + (2t^6+t^4+2)T0T1T2^2 + (2t^11+2t^9+t^7+t^6+t^4+t^2+2)T0T2^3 \
                  + T1^3T2 + (t^2+2)T1^2T2^2 + (t^9+t^7+t^6+2t^4+2t^2+1)T1T2^3 \
                  + (t^14+2t^13+t^12+t^11+2t^9+2t^6+t^4)T2^4",
    },
    FixtureEntry {
        label: "example4_second",
        field: FieldSpec::RationalFunctions(3),
        sextic: EX4_F,
        root: "t^7+t^4+t^2+1",
        stated_sign: None,
        quartic: "T0^4 + 2T0^3T1 + (t^7+t^4+2t^2+2)T0^3T2 + (t^2+1)T0^2T1T2 + (t^7+2t^6+1)T0^2T2^2 \
                  + (2t^2+1)T0T1^2T2 + (t^9+2t^4+t^2+2)T0T1T2^2 \
                  + (t^14+2t^11+2t^9+2t^8+t^7+2t^6+t^4+2t^2+1)T0T2^3 + T1^3T2 + (2t^7+2t^4+1)T1^2T2^2 \
                  + (2t^9+2t^7+2t^6+t^4+t^2+2)T1T2^3 \
                  + (t^18+2t^14+2t^13+t^11+t^10+2t^9+2t^8+t^6+t^2+2)T2^4",
    },
];

/// A coefficient as a sparse polynomial in `t`: `(exponent, integer)`.
pub type TCoeff = Vec<(u32, i64)>;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn exponent(&mut self) -> Result<u32, String> {
        if self.eat(b'^') {
            self.int().map(|e| e as u32).ok_or_else(|| self.error("exponent"))
        } else {
            Ok(1)
        }
    }

    fn error(&self, what: &str) -> String {
        format!("expected {what} at offset {}", self.pos)
    }

    /// `int? (t ^int?)?`, at least one part present.
    fn t_term(&mut self, sign: i64) -> Result<(u32, i64), String> {
        let n = self.int();
        let e = if self.eat(b't') { self.exponent()? } else { 0 };
        if n.is_none() && e == 0 {
            return Err(self.error("coefficient"));
        }
        Ok((e, sign * n.unwrap_or(1)))
    }

    fn sign(&mut self) -> Option<i64> {
        if self.eat(b'+') {
            Some(1)
        } else if self.eat(b'-') {
            Some(-1)
        } else {
            None
        }
    }

    fn t_poly(&mut self) -> Result<TCoeff, String> {
        let first = self.sign().unwrap_or(1);
        let mut out = vec![self.t_term(first)?];
        while let Some(s) = self.sign() {
            out.push(self.t_term(s)?);
        }
        Ok(out)
    }

    fn monomial(&mut self, var: u8) -> Result<Option<(usize, u32)>, String> {
        if !self.eat(var) {
            return Ok(None);
        }
        let i = self.int().ok_or_else(|| self.error("variable index"))? as usize;
        Ok(Some((i, self.exponent()?)))
    }
}

/// Parses `sum coeff * T0^a T1^b T2^c` into coefficient polynomials in `t`.
pub fn parse_terms(text: &str) -> Result<Vec<(Monomial, TCoeff)>, String> {
    let compact: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace() && *c != b'*').collect();
    let mut cur = Cursor { s: &compact, pos: 0 };
    let mut out = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let sign = match cur.sign() {
            Some(s) => s,
            None if first => 1,
            None => return Err(cur.error("'+' or '-'")),
        };
        first = false;
        let mut coeff: TCoeff = if cur.eat(b'(') {
            let c = cur.t_poly()?;
            if !cur.eat(b')') {
                return Err(cur.error("')'"));
            }
            c
        } else if cur.peek().is_some_and(|c| c.is_ascii_digit() || c == b't') {
            vec![cur.t_term(1)?]
        } else {
            vec![(0, 1)]
        };
        for c in coeff.iter_mut() {
            c.1 *= sign;
        }
        let mut exps = [0u32; 3];
        while let Some((i, e)) = cur.monomial(b'T')? {
            if i >= 3 {
                return Err(format!("variable T{i} out of range"));
            }
            exps[i] += e;
        }
        out.push((exps, coeff));
    }
    Ok(out)
}

/// Univariate text in `T`, read as `T0` by the ternary parser.
fn parse_univariate(text: &str) -> Result<Vec<(u32, TCoeff)>, String> {
    let mut rewritten = String::new();
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        rewritten.push(c);
        if c == 'T' && chars.get(i + 1).is_none_or(|n| !n.is_ascii_digit()) {
            rewritten.push('0');
        }
    }
    Ok(parse_terms(&rewritten)?.into_iter().map(|(e, c)| (e[0], c)).collect())
}

/// Fields in which fixture coefficients can be read.
pub trait FixtureField: Field {
    fn coefficient(&self, c: &TCoeff) -> Result<Self::Elem, String>;
}

impl FixtureField for Rationals {
    fn coefficient(&self, c: &TCoeff) -> Result<Self::Elem, String> {
        c.iter().try_fold(self.zero(), |acc, &(e, n)| {
            if e != 0 {
                return Err("t in a rational coefficient".to_string());
            }
            Ok(self.add(&acc, &self.from_i64(n)))
        })
    }
}

impl FixtureField for RatFunc<PrimeField> {
    fn coefficient(&self, c: &TCoeff) -> Result<Self::Elem, String> {
        let k = *self.base();
        let deg = c.iter().map(|&(e, _)| e as usize).max().unwrap_or(0);
        let mut coeffs = vec![k.zero(); deg + 1];
        for &(e, n) in c {
            coeffs[e as usize] = k.add(&coeffs[e as usize], &k.reduce(n));
        }
        Ok(self.from_poly(UniPoly::new(k, coeffs)))
    }
}

pub fn parse_quartic<F: FixtureField>(k: &F, text: &str) -> Result<TernaryForm<F>, String> {
    let terms = parse_terms(text)?;
    let mut out = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if e.iter().sum::<u32>() != 4 {
            return Err(format!("term of degree {} in a quartic", e.iter().sum::<u32>()));
        }
        out.push((e, k.coefficient(&c)?));
    }
    Ok(TernaryForm::from_terms(k.clone(), 4, out))
}

pub fn parse_univariate_poly<F: FixtureField>(k: &F, text: &str) -> Result<UniPoly<F>, String> {
    let terms = parse_univariate(text)?;
    let deg = terms.iter().map(|(e, _)| *e as usize).max().unwrap_or(0);
    let mut coeffs = vec![k.zero(); deg + 1];
    for (e, c) in terms {
        let v = k.coefficient(&c)?;
        coeffs[e as usize] = k.add(&coeffs[e as usize], &v);
    }
    Ok(UniPoly::new(k.clone(), coeffs))
}

pub fn parse_element<F: FixtureField>(k: &F, text: &str) -> Result<F::Elem, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor { s: compact.as_bytes(), pos: 0 };
    let c = cur.t_poly()?;
    if cur.peek().is_some() {
        return Err(cur.error("end of input"));
    }
    k.coefficient(&c)
}

pub fn function_field(p: u64) -> RatFunc<PrimeField> {
    RatFunc::new(PrimeField::new(p).expect("prime"), "t")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_terms() {
        let q = parse_quartic(&Rationals, "-2T0^3T2 + 4T1^4 - T2^4").unwrap();
        assert_eq!(q.coeff(&[3, 0, 1]), Rationals.from_i64(-2));
        assert_eq!(q.coeff(&[0, 4, 0]), Rationals.from_i64(4));
        assert_eq!(q.coeff(&[0, 0, 4]), Rationals.from_i64(-1));
        assert_eq!(q.terms().len(), 3);
    }

    #[test]
    fn parses_function_field_terms() {
        let k = function_field(3);
        let q = parse_quartic(&k, "T0^4 + (2t^6+t^4)T0^3T2 + 2t^2T2^4").unwrap();
        let t = k.t();
        assert_eq!(q.coeff(&[0, 0, 4]), k.mul(&k.from_i64(2), &k.mul(&t, &t)));
        assert_eq!(q.coeff(&[4, 0, 0]), k.one());
    }

    #[test]
    fn parses_sextics() {
        let f = parse_univariate_poly(&Rationals, EX1_F).unwrap();
        assert_eq!(f, UniPoly::from_i64s(Rationals, &[25, -150, 335, -340, 152, -24, 1]));
        let g = parse_univariate_poly(&Rationals, EX3_F).unwrap();
        assert_eq!(g, UniPoly::from_i64s(Rationals, &[1, -5, 0, 9, -2, -3, 1]));
    }

    #[test]
    fn all_fixtures_parse() {
        for fx in FIXTURES {
            match fx.field {
                FieldSpec::Rationals => {
                    parse_quartic(&Rationals, fx.quartic).unwrap();
                }
                FieldSpec::RationalFunctions(p) => {
                    parse_quartic(&function_field(p), fx.quartic).unwrap();
                }
                FieldSpec::PrimeField(_) => unreachable!(),
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_quartic(&Rationals, "T0^4 +").is_err());
        assert!(parse_quartic(&Rationals, "T0^3").is_err());
        assert!(parse_quartic(&Rationals, "tT0^4").is_err());
        assert!(parse_quartic(&Rationals, "T0^4 T5").is_err());
    }
}
