//! JSON cover documents.
//!
//! ```json
//! {"group": [4], "branch": [{"generator": [1], "character": 1}]}
//! ```

use abcover::{CombinatorialData, ValidationReport};
use serde::{Deserialize, Serialize};
use serde_json::error::Category;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    /// Cyclic moduli; empty for the trivial group.
    pub group: Vec<i64>,
    pub branch: Vec<BranchEntry>,
}

/// One pair `(H, ψ)`: `H = ⟨generator⟩` and `ψ(generator) = character / d`
/// with `d` the order of the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntry {
    pub generator: Vec<i64>,
    pub character: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at line {line}, column {column}: {message}")]
    SchemaError {
        line: usize,
        column: usize,
        message: String,
    },
}

pub fn parse_input(text: &str) -> Result<CoverDocument, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        // serde_json appends " at line L column C"; the position is kept
        // in separate fields instead.
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        match e.classify() {
            Category::Data => ParseError::SchemaError {
                line,
                column,
                message,
            },
            Category::Syntax | Category::Eof | Category::Io => ParseError::SyntaxError {
                line,
                column,
                message,
            },
        }
    })
}

pub fn print_document(doc: &CoverDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

impl CoverDocument {
    pub fn new(group: Vec<i64>, branch: Vec<(Vec<i64>, i64)>) -> Self {
        CoverDocument {
            group,
            branch: branch
                .into_iter()
                .map(|(generator, character)| BranchEntry {
                    generator,
                    character,
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<CombinatorialData, ValidationReport> {
        let branch: Vec<(Vec<i64>, i64)> = self
            .branch
            .iter()
            .map(|b| (b.generator.clone(), b.character))
            .collect();
        CombinatorialData::from_raw(&self.group, &branch)
    }

    /// The document for already validated data (canonical generators).
    pub fn from_data(data: &CombinatorialData) -> Self {
        CoverDocument::new(
            data.group().moduli().iter().map(|&m| m as i64).collect(),
            data.branch()
                .iter()
                .map(|b| {
                    let g = b.generator().residues().iter().map(|&r| r as i64).collect();
                    (g, b.char_residue() as i64)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2_CUBED: &str = r#"{"group":[2,2,2],"branch":[{"generator":[1,0,0],"character":1},{"generator":[0,1,0],"character":1},{"generator":[0,0,1],"character":1},{"generator":[1,1,1],"character":1}]}"#;

    #[test]
    fn parses_examples() {
        let doc = parse_input(Z2_CUBED).unwrap();
        assert_eq!(doc.group, vec![2, 2, 2]);
        assert_eq!(doc.branch.len(), 4);
        assert!(doc.validate().is_ok());

        let trivial = parse_input(r#"{"group":[],"branch":[]}"#).unwrap();
        assert!(trivial.validate().unwrap().is_empty());

        let bad = parse_input(r#"{"group":[4],"branch":[{"generator":[1],"character":2}]}"#).unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn reports_positions() {
        match parse_input("{\"group\": [2,\n ]}") {
            Err(ParseError::SyntaxError { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_input(r#"{"group":[2],"branch":[],"extra":1}"#) {
            Err(ParseError::SchemaError { message, .. }) => assert!(message.contains("extra")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_input(r#"{"group":[2]}"#),
            Err(ParseError::SchemaError { .. })
        ));
        assert!(matches!(
            parse_input(r#"{"group":[2],"branch":[{"generator":[1],"character":"1"}]}"#),
            Err(ParseError::SchemaError { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let doc = parse_input(Z2_CUBED).unwrap();
        assert_eq!(parse_input(&print_document(&doc)).unwrap(), doc);
    }
}
