//! Maps a JSON path back to the line and column of its value in the source.

use super::job::Seg;

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Option<()> {
        (self.peek()? == b).then(|| self.pos += 1)
    }

    fn string(&mut self) -> Option<String> {
        self.eat(b'"')?;
        let start = self.pos;
        while self.pos < self.text.len() {
            match self.text[self.pos] {
                b'\\' => self.pos += 2,
                b'"' => {
                    let raw = std::str::from_utf8(&self.text[start..self.pos]).ok()?;
                    self.pos += 1;
                    return serde_json::from_str(&format!("\"{raw}\"")).ok();
                }
                _ => self.pos += 1,
            }
        }
        None
    }

    fn skip_value(&mut self) -> Option<()> {
        match self.peek()? {
            b'"' => self.string().map(|_| ()),
            b'{' => {
                self.pos += 1;
                if self.eat(b'}').is_some() {
                    return Some(());
                }
                loop {
                    self.string()?;
                    self.eat(b':')?;
                    self.skip_value()?;
                    if self.eat(b',').is_none() {
                        return self.eat(b'}');
                    }
                }
            }
            b'[' => {
                self.pos += 1;
                if self.eat(b']').is_some() {
                    return Some(());
                }
                loop {
                    self.skip_value()?;
                    if self.eat(b',').is_none() {
                        return self.eat(b']');
                    }
                }
            }
            _ => {
                while self.pos < self.text.len() && !b",]} \t\r\n".contains(&self.text[self.pos]) {
                    self.pos += 1;
                }
                Some(())
            }
        }
    }

    /// Moves to the start of the child value named by `seg`.
    fn enter(&mut self, seg: &Seg) -> Option<()> {
        match (self.peek()?, seg) {
            (b'{', Seg::Key(key)) => {
                self.pos += 1;
                loop {
                    if self.peek()? == b'}' {
                        return None;
                    }
                    let k = self.string()?;
                    self.eat(b':')?;
                    if &k == key {
                        self.ws();
                        return Some(());
                    }
                    self.skip_value()?;
                    self.eat(b',');
                }
            }
            (b'[', Seg::Index(i)) => {
                self.pos += 1;
                for _ in 0..*i {
                    self.skip_value()?;
                    self.eat(b',')?;
                }
                (self.peek()? != b']').then_some(())
            }
            _ => None,
        }
    }
}

/// The 1-based line and column where the value at `path` begins, or of its
/// deepest existing ancestor.
pub(crate) fn locate(text: &str, path: &[Seg]) -> Option<(usize, usize)> {
    let mut s = Scanner {
        text: text.as_bytes(),
        pos: 0,
    };
    s.ws();
    let mut found = s.pos;
    for seg in path {
        if s.enter(seg).is_none() {
            break;
        }
        found = s.pos;
    }
    let before = &text.as_bytes()[..found];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = found - before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
    Some((line, column))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_nested_values() {
        let text = "{\n  \"a\": {\"b\": [1, \"x\\\"y\", {\"c\": 3}]}\n}";
        let k = |s: &str| Seg::Key(s.into());
        assert_eq!(locate(text, &[k("a"), k("b"), Seg::Index(2), k("c")]), Some((2, 32)));
        assert_eq!(locate(text, &[k("a"), k("b"), Seg::Index(1)]), Some((2, 18)));
        assert_eq!(locate(text, &[k("a"), k("missing")]), Some((2, 8)));
    }
}
