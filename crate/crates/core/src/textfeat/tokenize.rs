/// Splits on every non-alphanumeric character and lowercases each piece.
/// Empty pieces are dropped; order and duplicates are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_punctuation_and_space() {
        assert_eq!(tokenize("iPhone 12 Pro-Max"), ["iphone", "12", "pro", "max"]);
    }

    #[test]
    fn empty_and_separator_only() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" -- , ").is_empty());
    }

    #[test]
    fn unicode_lowercase() {
        assert_eq!(tokenize("Größe 42"), ["größe", "42"]);
        assert_eq!(tokenize("ÉTÉ"), ["été"]);
    }

    #[test]
    fn keeps_duplicates_in_order() {
        assert_eq!(tokenize("red Red RED shoe"), ["red", "red", "red", "shoe"]);
    }
}
