//! A small expression language over tail classes.
//!
//! ```text
//! expr  := join ( "<=" join )?
//! join  := meet ( "|" meet )*
//! meet  := unary ( "&" unary )*
//! unary := "!" unary | atom
//! atom  := "(" join ")" | "sq(" n ")" | "shift(" m "," join ")"
//!        | "0" | "1" | "p=K;w=bits"
//! ```

use std::fmt;

use super::tail::TailClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprValue {
    Class(TailClass),
    Bool(bool),
}

impl fmt::Display for ExprValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Class(c) => write!(f, "{c}"),
            Self::Bool(b) => write!(f, "{b}"),
        }
    }
}

pub fn eval(src: &str) -> Result<ExprValue> {
    let mut p = Parser { src, pos: 0 };
    let lhs = p.join()?;
    p.skip_ws();
    let value = if p.eat("<=") {
        let rhs = p.join()?;
        ExprValue::Bool(lhs.leq(&rhs))
    } else {
        ExprValue::Class(lhs)
    };
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {tok:?}")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let value = rest[..len].parse().map_err(|_| self.error("expected integer"))?;
        self.pos += len;
        Ok(value)
    }

    fn join(&mut self) -> Result<TailClass> {
        let mut acc = self.meet()?;
        while self.eat("|") {
            acc = acc.join(&self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<TailClass> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = acc.meet(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<TailClass> {
        if self.eat("!") {
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<TailClass> {
        if self.eat("(") {
            let inner = self.join()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("sq(") {
            let n = self.integer()?;
            self.expect(")")?;
            let n = usize::try_from(n).map_err(|_| Error::ZeroPeriod)?;
            return TailClass::sq(n);
        }
        if self.eat("shift(") {
            let m = self.integer()?;
            self.expect(",")?;
            let inner = self.join()?;
            self.expect(")")?;
            return Ok(inner.shift(m));
        }
        if self.rest().starts_with("p=") {
            let rest = self.rest();
            let semi = rest.find(';').ok_or_else(|| self.error("bad literal"))?;
            let word_len = rest[semi + 1..]
                .strip_prefix("w=")
                .ok_or_else(|| self.error("bad literal"))?
                .chars()
                .take_while(|c| *c == '0' || *c == '1')
                .count();
            let end = semi + 3 + word_len;
            let class = rest[..end].parse()?;
            self.pos += end;
            return Ok(class);
        }
        if self.eat("0") {
            return Ok(TailClass::zero());
        }
        if self.eat("1") {
            return Ok(TailClass::one());
        }
        Err(self.error("expected an atom"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(src: &str) -> String {
        eval(src).unwrap().to_string()
    }

    #[test]
    fn evaluates_operators() {
        assert_eq!(class("sq(2) & sq(3)"), "p=6;w=000001");
        assert_eq!(class("p=2;w=10 | p=2;w=01"), "p=1;w=1");
        assert_eq!(class("!sq(2)"), "p=2;w=10");
        assert_eq!(class("shift(1, sq(2))"), "p=2;w=10");
        assert_eq!(class("shift(-1, shift(1, sq(3)))"), "p=3;w=001");
        assert_eq!(class("!(sq(2) | sq(3)) & 1"), "p=6;w=100010");
    }

    #[test]
    fn comparisons() {
        assert_eq!(eval("sq(4) <= sq(2)").unwrap(), ExprValue::Bool(true));
        assert_eq!(eval("sq(2) <= sq(3)").unwrap(), ExprValue::Bool(false));
        assert_eq!(eval("0 <= sq(9)").unwrap(), ExprValue::Bool(true));
    }

    #[test]
    fn rejects_garbage() {
        assert!(eval("sq(2) &").is_err());
        assert!(eval("sq(0)").is_err());
        assert!(eval("sq(2) sq(3)").is_err());
        assert!(eval("p=3;w=01").is_err());
    }
}
