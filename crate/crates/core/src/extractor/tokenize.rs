//! Whitespace/punctuation tokenizer for short, grammar-free texts.

/// Characters that wrap mentions and are dropped from token boundaries.
const WRAPPER_CHARS: &[char] = &['[', ']', '(', ')', '{', '}', '"', '\'', '<', '>'];

fn is_separator(c: char) -> bool {
    c == ',' || c == ';'
}

fn is_edge_punct(c: char) -> bool {
    c == '.' || c == '-'
}

/// Splits `content` into tokens.
///
/// Whitespace (including line breaks) separates tokens. Commas and semicolons
/// are always tokens of their own. Brackets, quotes and angle brackets are
/// stripped from token edges, and leading or trailing periods and hyphens
/// become separate tokens, except that an initial such as `J.` stays whole.
pub fn tokenize(content: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in content.split_whitespace() {
        let mut rest = chunk;
        while let Some(pos) = rest.find(is_separator) {
            push_piece(&rest[..pos], &mut tokens);
            tokens.push(rest[pos..pos + 1].to_string());
            rest = &rest[pos + 1..];
        }
        push_piece(rest, &mut tokens);
    }
    tokens
}

fn push_piece(piece: &str, tokens: &mut Vec<String>) {
    let chars: Vec<char> = piece.chars().collect();
    let mut start = 0;
    while start < chars.len()
        && (WRAPPER_CHARS.contains(&chars[start]) || is_edge_punct(chars[start]))
    {
        if is_edge_punct(chars[start]) {
            tokens.push(chars[start].to_string());
        }
        start += 1;
    }
    let mut end = chars.len();
    let mut trailing = Vec::new();
    while end > start && (WRAPPER_CHARS.contains(&chars[end - 1]) || is_edge_punct(chars[end - 1]))
    {
        if is_edge_punct(chars[end - 1]) {
            trailing.push(chars[end - 1]);
        }
        end -= 1;
    }
    trailing.reverse();

    let mut core: String = chars[start..end].iter().collect();
    let is_initial = end - start == 1 && chars[start].is_alphabetic();
    if is_initial && trailing.first() == Some(&'.') {
        trailing.remove(0);
        core.push('.');
    }
    if !core.is_empty() {
        tokens.push(core);
    }
    tokens.extend(trailing.into_iter().map(String::from));
}
