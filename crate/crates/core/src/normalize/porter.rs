//! Porter (1980) suffix-stripping stemmer.
//!
//! Follows the behaviour of Martin Porter's published reference program,
//! which is what the public `voc.txt` / `output.txt` test vocabulary was
//! produced with: step 2 uses `bli -> ble` (rather than `abli -> able`) and
//! carries the extra `logi -> log` rule, and words of two letters or fewer
//! are returned unchanged.

/// Stem a lowercase word. Words that are not pure ASCII lowercase letters are
/// returned unchanged.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word { b: word.as_bytes().to_vec() };
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5a();
    w.step5b();
    // only ASCII bytes were ever written
    String::from_utf8(w.b).expect("ascii")
}

struct Word {
    b: Vec<u8>,
}

type Cond = fn(&Word, usize) -> bool;

impl Word {
    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[..end]`.
    fn measure(&self, end: usize) -> usize {
        let mut m = 0;
        let mut prev_vowel = false;
        for i in 0..end {
            let cons = self.is_consonant(i);
            if cons && prev_vowel {
                m += 1;
            }
            prev_vowel = !cons;
        }
        m
    }

    fn has_vowel(&self, end: usize) -> bool {
        (0..end).any(|i| !self.is_consonant(i))
    }

    /// `b[..end]` ends with a double consonant.
    fn double_consonant(&self, end: usize) -> bool {
        end >= 2 && self.b[end - 1] == self.b[end - 2] && self.is_consonant(end - 1)
    }

    /// `b[..end]` ends consonant-vowel-consonant, the last not w, x or y.
    fn cvc(&self, end: usize) -> bool {
        end >= 3
            && self.is_consonant(end - 3)
            && !self.is_consonant(end - 2)
            && self.is_consonant(end - 1)
            && !matches!(self.b[end - 1], b'w' | b'x' | b'y')
    }

    fn ends_with(&self, suffix: &str) -> bool {
        self.b.ends_with(suffix.as_bytes())
    }

    fn replace_tail(&mut self, stem_len: usize, with: &str) {
        self.b.truncate(stem_len);
        self.b.extend_from_slice(with.as_bytes());
    }

    /// Apply the first rule whose suffix matches; later rules are not tried
    /// even when the matching rule's condition fails.
    fn apply_first(&mut self, rules: &[(&str, &str)], cond: Cond) {
        for (suffix, repl) in rules {
            if self.ends_with(suffix) {
                let stem_len = self.b.len() - suffix.len();
                if cond(self, stem_len) {
                    self.replace_tail(stem_len, repl);
                }
                return;
            }
        }
    }

    fn step1a(&mut self) {
        if self.ends_with("sses") || self.ends_with("ies") {
            let n = self.b.len();
            self.b.truncate(n - 2);
        } else if self.ends_with("ss") {
        } else if self.ends_with("s") {
            self.b.pop();
        }
    }

    fn step1b(&mut self) {
        if self.ends_with("eed") {
            let stem_len = self.b.len() - 3;
            if self.measure(stem_len) > 0 {
                self.b.pop();
            }
            return;
        }
        let stem_len = if self.ends_with("ed") && self.has_vowel(self.b.len() - 2) {
            self.b.len() - 2
        } else if self.ends_with("ing") && self.has_vowel(self.b.len() - 3) {
            self.b.len() - 3
        } else {
            return;
        };
        self.b.truncate(stem_len);
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.b.push(b'e');
        } else if self.double_consonant(self.b.len()) {
            if !matches!(self.b[self.b.len() - 1], b'l' | b's' | b'z') {
                self.b.pop();
            }
        } else if self.measure(self.b.len()) == 1 && self.cvc(self.b.len()) {
            self.b.push(b'e');
        }
    }

    fn step1c(&mut self) {
        if self.ends_with("y") && self.has_vowel(self.b.len() - 1) {
            let n = self.b.len();
            self.b[n - 1] = b'i';
        }
    }

    fn step2(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("ational", "ate"),
            ("tional", "tion"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("bli", "ble"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
            ("ization", "ize"),
            ("ation", "ate"),
            ("ator", "ate"),
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("biliti", "ble"),
            ("logi", "log"),
        ];
        self.apply_first(RULES, |w, end| w.measure(end) > 0);
    }

    fn step3(&mut self) {
        const RULES: &[(&str, &str)] =
            &[("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"), ("ical", "ic"), ("ful", ""), ("ness", "")];
        self.apply_first(RULES, |w, end| w.measure(end) > 0);
    }

    fn step4(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("al", ""),
            ("ance", ""),
            ("ence", ""),
            ("er", ""),
            ("ic", ""),
            ("able", ""),
            ("ible", ""),
            ("ant", ""),
            ("ement", ""),
            ("ment", ""),
            ("ent", ""),
            ("ion", ""),
            ("ou", ""),
            ("ism", ""),
            ("ate", ""),
            ("iti", ""),
            ("ous", ""),
            ("ive", ""),
            ("ize", ""),
        ];
        self.apply_first(RULES, |w, end| {
            let ion = w.b.len() - end == 3 && w.b[end..] == *b"ion";
            w.measure(end) > 1 && (!ion || (end > 0 && matches!(w.b[end - 1], b's' | b't')))
        });
    }

    fn step5a(&mut self) {
        if self.ends_with("e") {
            let end = self.b.len() - 1;
            let m = self.measure(end);
            if m > 1 || (m == 1 && !self.cvc(end)) {
                self.b.pop();
            }
        }
    }

    fn step5b(&mut self) {
        let n = self.b.len();
        if self.ends_with("ll") && self.measure(n) > 1 {
            self.b.pop();
        }
    }
}
