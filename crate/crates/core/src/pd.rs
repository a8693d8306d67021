//! Tokenizer for PD-code text: `X[a,b,c,d]` crossings, `O` free loops,
//! `B[nw,ne,sw,se]` tangle boundaries and `#` comments.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct TokenError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    X([u32; 4]),
    B([u32; 4]),
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Located {
    pub token: Token,
    pub line: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Located>, TokenError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == ',' || ch == ';' {
                i += 1;
                continue;
            }
            match ch {
                'O' | 'o' => {
                    out.push(Located { token: Token::Loop, line });
                    i += 1;
                }
                'X' | 'B' => {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ']')
                        .map(|p| p + i)
                        .ok_or_else(|| TokenError { line, msg: format!("unterminated {ch}[ token") })?;
                    if chars.get(i + 1) != Some(&'[') {
                        return Err(TokenError { line, msg: format!("expected '[' after {ch}") });
                    }
                    let inner: String = chars[i + 2..close].iter().collect();
                    let nums = inner
                        .split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| TokenError { line, msg: format!("malformed token {ch}[{inner}]") })?;
                    let arr: [u32; 4] = nums.as_slice().try_into().map_err(|_| TokenError {
                        line,
                        msg: format!("{ch}[...] needs 4 entries, got {}", nums.len()),
                    })?;
                    out.push(Located { token: if ch == 'X' { Token::X(arr) } else { Token::B(arr) }, line });
                    i = close + 1;
                }
                other => {
                    return Err(TokenError { line, msg: format!("unexpected character {other:?}") });
                }
            }
        }
    }
    Ok(out)
}
