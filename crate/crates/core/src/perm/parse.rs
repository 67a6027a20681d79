use thiserror::Error;

use super::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at offset {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("point {point} at offset {pos} is outside 1..={degree}")]
    OutOfRange {
        pos: usize,
        point: u64,
        degree: usize,
    },
    #[error("point {point} repeated inside a cycle at offset {pos}")]
    RepeatedPoint { pos: usize, point: u64 },
    #[error("integer at offset {pos} is too large")]
    Overflow { pos: usize },
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.bytes.get(self.pos) {
            Some(&b) => ParseError::Unexpected {
                pos: self.pos,
                found: b as char,
            },
            None => ParseError::UnexpectedEnd { pos: self.pos },
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError::Overflow { pos: start })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected());
        }
        Ok((start, value))
    }
}

/// Parses cycle notation such as `(1,2)(3,4,5)` over points `1..=degree`.
///
/// Cycles are multiplied left to right: the leftmost cycle acts first.
/// The empty string and `()` both denote the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, ParseError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut result = Permutation::identity(degree);
    if cur.peek().is_none() {
        return Ok(result);
    }
    // "()" is only legal as the whole expression.
    {
        let save = cur.pos;
        cur.expect(b'(')?;
        if cur.peek() == Some(b')') {
            cur.pos += 1;
            return match cur.peek() {
                None => Ok(result),
                Some(_) => Err(cur.unexpected()),
            };
        }
        cur.pos = save;
    }
    while cur.peek().is_some() {
        cur.expect(b'(')?;
        let mut points: Vec<usize> = Vec::new();
        loop {
            let (pos, v) = cur.int()?;
            if v == 0 || v as usize > degree || v > u32::MAX as u64 {
                return Err(ParseError::OutOfRange {
                    pos,
                    point: v,
                    degree,
                });
            }
            let p = v as usize - 1;
            if points.contains(&p) {
                return Err(ParseError::RepeatedPoint { pos, point: v });
            }
            points.push(p);
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                Some(b')') => {
                    cur.pos += 1;
                    break;
                }
                _ => return Err(cur.unexpected()),
            }
        }
        let c = Permutation::cycle(degree, &points).expect("validated cycle");
        result = c.compose(&result);
    }
    Ok(result)
}

/// Splits a comma-separated list of permutations in cycle notation, e.g.
/// `(1,2),(3,4)(5,6)`, at commas outside parentheses.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or(ParseError::Unexpected { pos: i, found: ')' })?
            }
            b',' if depth == 0 => {
                out.push(parse_piece(text, start, i, degree)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError::UnexpectedEnd { pos: bytes.len() });
    }
    if !text[start..].trim().is_empty() || !out.is_empty() {
        out.push(parse_piece(text, start, bytes.len(), degree)?);
    }
    Ok(out)
}

fn parse_piece(
    text: &str,
    start: usize,
    end: usize,
    degree: usize,
) -> Result<Permutation, ParseError> {
    let piece = &text[start..end];
    if piece.trim().is_empty() {
        return Err(ParseError::Unexpected {
            pos: end.min(text.len().saturating_sub(1)),
            found: ',',
        });
    }
    parse_cycles(piece, degree).map_err(|e| shift(e, start))
}

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Unexpected { pos, found } => ParseError::Unexpected {
            pos: pos + by,
            found,
        },
        ParseError::UnexpectedEnd { pos } => ParseError::UnexpectedEnd { pos: pos + by },
        ParseError::OutOfRange { pos, point, degree } => ParseError::OutOfRange {
            pos: pos + by,
            point,
            degree,
        },
        ParseError::RepeatedPoint { pos, point } => ParseError::RepeatedPoint {
            pos: pos + by,
            point,
        },
        ParseError::Overflow { pos } => ParseError::Overflow { pos: pos + by },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition() {
        let p = parse_cycles("(2,4)", 4).unwrap();
        assert_eq!(p.one_based(), vec![1, 4, 3, 2]);
    }

    #[test]
    fn identity_forms() {
        assert_eq!(parse_cycles("()", 3).unwrap().one_based(), vec![1, 2, 3]);
        assert_eq!(parse_cycles("", 3).unwrap().one_based(), vec![1, 2, 3]);
        assert_eq!(parse_cycles("  ", 3).unwrap().one_based(), vec![1, 2, 3]);
    }

    #[test]
    fn three_cycle() {
        assert_eq!(
            parse_cycles("(1,2,3)", 4).unwrap().one_based(),
            vec![2, 3, 1, 4]
        );
    }

    #[test]
    fn left_cycle_acts_first() {
        // 1 -> 2 under (1,2), then 2 -> 3 under (2,3).
        let p = parse_cycles("(1,2)(2,3)", 3).unwrap();
        assert_eq!(p.one_based(), vec![3, 1, 2]);
    }

    #[test]
    fn whitespace_is_ignored() {
        let p = parse_cycles(" ( 1 , 2 ) (3, 4 )", 4).unwrap();
        assert_eq!(p.one_based(), vec![2, 1, 4, 3]);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_cycles("(1,5)", 4),
            Err(ParseError::OutOfRange {
                pos: 3,
                point: 5,
                degree: 4
            })
        );
        assert!(matches!(
            parse_cycles("(1,2", 4),
            Err(ParseError::UnexpectedEnd { pos: 4 })
        ));
        assert!(matches!(
            parse_cycles("(1,x)", 4),
            Err(ParseError::Unexpected { pos: 3, found: 'x' })
        ));
        assert!(matches!(
            parse_cycles("(0)", 4),
            Err(ParseError::OutOfRange { .. })
        ));
        assert!(matches!(
            parse_cycles("()(1,2)", 4),
            Err(ParseError::Unexpected { .. })
        ));
        assert!(matches!(
            parse_cycles("(1,2,1)", 4),
            Err(ParseError::RepeatedPoint { .. })
        ));
    }

    #[test]
    fn generator_lists() {
        let gens = parse_generator_list("(1,2),(3,4)(1,3), ()", 4).unwrap();
        assert_eq!(gens.len(), 3);
        assert!(gens[2].is_identity());
        assert!(parse_generator_list("", 4).unwrap().is_empty());
        assert!(parse_generator_list("(1,2),", 4).is_err());
        assert!(matches!(
            parse_generator_list("(1,2),(1,9)", 4),
            Err(ParseError::OutOfRange { pos: 9, .. })
        ));
    }
}
