use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::lifting::MAX_LIFTING_SIZE;

const FORMAT_HEADER: &str = "# decodex-bg v1";

static STANDARD_TABLE: &str = include_str!("../../data/base_graphs.csv");
static TOY_TABLE: &str = include_str!("../../data/toy_graph.csv");

/// Identifier of a base graph.
///
/// `Toy` is a 4 x 8 graph (4 systematic columns) with the same core
/// structure as the standard graphs, small enough for exhaustive
/// maximum-likelihood decoding in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseGraphId {
    Bg1,
    Bg2,
    Toy,
}

impl BaseGraphId {
    /// Numeric id used in the table files.
    pub fn file_id(self) -> u32 {
        match self {
            BaseGraphId::Toy => 0,
            BaseGraphId::Bg1 => 1,
            BaseGraphId::Bg2 => 2,
        }
    }

    pub fn from_file_id(id: u32) -> Option<Self> {
        match id {
            0 => Some(BaseGraphId::Toy),
            1 => Some(BaseGraphId::Bg1),
            2 => Some(BaseGraphId::Bg2),
            _ => None,
        }
    }

    pub fn rows(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 46,
            BaseGraphId::Bg2 => 42,
            BaseGraphId::Toy => 4,
        }
    }

    pub fn cols(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 68,
            BaseGraphId::Bg2 => 52,
            BaseGraphId::Toy => 8,
        }
    }

    /// Number of systematic base columns in the matrix itself.
    pub fn systematic_cols(self) -> usize {
        self.cols() - self.rows()
    }

    /// Number of non-null base entries the table must contain.
    pub fn expected_entries(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 316,
            BaseGraphId::Bg2 => 197,
            BaseGraphId::Toy => 21,
        }
    }

    /// Maximum code block size `K_cb` used by segmentation.
    pub fn max_code_block(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 8448,
            BaseGraphId::Bg2 => 3840,
            BaseGraphId::Toy => 4 * 4,
        }
    }
}

impl std::fmt::Display for BaseGraphId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseGraphId::Bg1 => f.write_str("BG1"),
            BaseGraphId::Bg2 => f.write_str("BG2"),
            BaseGraphId::Toy => f.write_str("TOY"),
        }
    }
}

/// One non-null circulant of a base graph, with its shift for every
/// lifting-size set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseEntry {
    pub row: usize,
    pub col: usize,
    pub shifts: [u16; 8],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    pub id: BaseGraphId,
    /// Entries sorted by `(row, col)`.
    pub entries: Vec<BaseEntry>,
}

impl BaseGraph {
    /// The bundled table for `id`, parsed and validated on first use.
    pub fn bundled(id: BaseGraphId) -> &'static BaseGraph {
        static GRAPHS: OnceLock<[BaseGraph; 3]> = OnceLock::new();
        let graphs = GRAPHS.get_or_init(|| {
            let mut standard =
                parse_base_graphs(STANDARD_TABLE).expect("bundled base graph table is valid").into_iter();
            let mut toy = parse_base_graphs(TOY_TABLE).expect("bundled toy table is valid");
            let bg1 = standard.next().expect("BG1 present");
            let bg2 = standard.next().expect("BG2 present");
            [bg1, bg2, toy.remove(0)]
        });
        match id {
            BaseGraphId::Bg1 => &graphs[0],
            BaseGraphId::Bg2 => &graphs[1],
            BaseGraphId::Toy => &graphs[2],
        }
    }

    pub fn rows(&self) -> usize {
        self.id.rows()
    }

    pub fn cols(&self) -> usize {
        self.id.cols()
    }

    pub fn systematic_cols(&self) -> usize {
        self.id.systematic_cols()
    }

    pub fn row_entries(&self, row: usize) -> impl Iterator<Item = &BaseEntry> {
        self.entries.iter().filter(move |e| e.row == row)
    }
}

fn fnv1a64(data: &[u8]) -> u64 {
    data.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

fn table_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Table(format!("line {line}: {msg}"))
}

/// Parses a base-graph table file.
///
/// Format: a `# decodex-bg v1` header, `# entries=<n>` and
/// `# checksum=<fnv1a64 hex>` comment lines, then one record per line:
/// `bg_id,row,col,s0,...,s7` with `-1` marking a null entry. The checksum
/// covers every record line including its trailing newline. Each graph present
/// must carry exactly its standard number of non-null entries.
///
/// Returns the graphs in ascending id order.
pub fn parse_base_graphs(text: &str) -> Result<Vec<BaseGraph>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim_end() == FORMAT_HEADER => {}
        _ => return Err(table_err(1, format!("missing `{FORMAT_HEADER}` header"))),
    }

    let mut declared_entries = None;
    let mut declared_checksum = None;
    let mut record_bytes = Vec::new();
    let mut records = 0usize;
    let mut graphs: Vec<BaseGraph> = Vec::new();
    let mut seen = HashSet::new();

    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(n) = comment.strip_prefix("entries=") {
                declared_entries = Some(n.parse::<usize>().map_err(|e| table_err(lineno, e))?);
            } else if let Some(hex) = comment.strip_prefix("checksum=") {
                declared_checksum = Some(u64::from_str_radix(hex, 16).map_err(|e| table_err(lineno, e))?);
            }
            continue;
        }
        record_bytes.extend_from_slice(line.as_bytes());
        record_bytes.push(b'\n');
        records += 1;

        let fields: Vec<i64> = line
            .split(',')
            .map(|f| f.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| table_err(lineno, e))?;
        if fields.len() != 11 {
            return Err(table_err(lineno, format!("expected 11 fields, got {}", fields.len())));
        }
        let id = u32::try_from(fields[0])
            .ok()
            .and_then(BaseGraphId::from_file_id)
            .ok_or_else(|| table_err(lineno, format!("unknown graph id {}", fields[0])))?;
        let (row, col) = (fields[1], fields[2]);
        if row < 0 || row as usize >= id.rows() || col < 0 || col as usize >= id.cols() {
            return Err(table_err(lineno, format!("({row},{col}) outside {id}")));
        }
        let (row, col) = (row as usize, col as usize);
        if !seen.insert((id, row, col)) {
            return Err(table_err(lineno, format!("duplicate entry ({row},{col}) in {id}")));
        }

        let raw_shifts = &fields[3..];
        let nulls = raw_shifts.iter().filter(|&&s| s == -1).count();
        if nulls == 8 {
            continue;
        }
        if nulls != 0 {
            return Err(table_err(lineno, "entry mixes null and non-null shifts"));
        }
        let mut shifts = [0u16; 8];
        for (dst, &s) in shifts.iter_mut().zip(raw_shifts) {
            if s < 0 || s as usize >= MAX_LIFTING_SIZE {
                return Err(table_err(lineno, format!("shift {s} out of range")));
            }
            *dst = s as u16;
        }

        let pos = match graphs.iter().position(|g| g.id == id) {
            Some(pos) => pos,
            None => {
                graphs.push(BaseGraph { id, entries: Vec::new() });
                graphs.len() - 1
            }
        };
        graphs[pos].entries.push(BaseEntry { row, col, shifts });
    }

    match declared_entries {
        Some(n) if n == records => {}
        Some(n) => return Err(Error::Table(format!("header declares {n} entries, found {records}"))),
        None => return Err(Error::Table("missing `# entries=` header".into())),
    }
    match declared_checksum {
        Some(sum) if sum == fnv1a64(&record_bytes) => {}
        Some(_) => return Err(Error::Table("checksum mismatch".into())),
        None => return Err(Error::Table("missing `# checksum=` header".into())),
    }

    graphs.sort_by_key(|g| g.id);
    for g in &mut graphs {
        if g.entries.len() != g.id.expected_entries() {
            return Err(Error::Table(format!(
                "{} has {} non-null entries, expected {}",
                g.id,
                g.entries.len(),
                g.id.expected_entries()
            )));
        }
        g.entries.sort_by_key(|e| (e.row, e.col));
    }
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_checksum(records: &[&str]) -> String {
        let body: String = records.iter().map(|r| format!("{r}\n")).collect();
        format!(
            "{FORMAT_HEADER}\n# entries={}\n# checksum={:016x}\n{body}",
            records.len(),
            fnv1a64(body.as_bytes())
        )
    }

    #[test]
    fn bundled_tables_have_standard_shape() {
        let bg1 = BaseGraph::bundled(BaseGraphId::Bg1);
        let bg2 = BaseGraph::bundled(BaseGraphId::Bg2);
        assert_eq!(bg1.entries.len(), 316);
        assert_eq!(bg2.entries.len(), 197);
        assert_eq!((bg1.rows(), bg1.cols(), bg1.systematic_cols()), (46, 68, 22));
        assert_eq!((bg2.rows(), bg2.cols(), bg2.systematic_cols()), (42, 52, 10));
        let toy = BaseGraph::bundled(BaseGraphId::Toy);
        assert_eq!((toy.rows(), toy.cols(), toy.entries.len()), (4, 8, 21));
    }

    #[test]
    fn first_bg1_entry_matches_standard() {
        let e = BaseGraph::bundled(BaseGraphId::Bg1).entries[0];
        assert_eq!((e.row, e.col), (0, 0));
        assert_eq!(e.shifts, [250, 307, 73, 223, 211, 294, 0, 135]);
    }

    #[test]
    fn rejects_missing_header() {
        let err = parse_base_graphs("1,0,0,0,0,0,0,0,0,0,0\n").unwrap_err();
        assert!(matches!(err, Error::Table(_)));
    }

    #[test]
    fn rejects_wrong_entry_count() {
        // A well-formed file with a single toy entry: count check must fire.
        let text = with_checksum(&["0,0,0,1,1,1,1,1,1,1,1"]);
        let err = parse_base_graphs(&text).unwrap_err();
        assert!(err.to_string().contains("expected 21"), "{err}");
    }

    #[test]
    fn rejects_tampered_record() {
        let tampered = STANDARD_TABLE.replacen("1,0,0,250,", "1,0,0,251,", 1);
        let err = parse_base_graphs(&tampered).unwrap_err();
        assert_eq!(err, Error::Table("checksum mismatch".into()));
    }

    #[test]
    fn rejects_duplicates_and_partial_nulls() {
        let dup = with_checksum(&["0,0,0,1,1,1,1,1,1,1,1", "0,0,0,2,2,2,2,2,2,2,2"]);
        assert!(parse_base_graphs(&dup).unwrap_err().to_string().contains("duplicate"));
        let partial = with_checksum(&["0,0,0,-1,1,1,1,1,1,1,1"]);
        assert!(parse_base_graphs(&partial).unwrap_err().to_string().contains("mixes"));
    }

    #[test]
    fn entries_unique_and_sorted() {
        for id in [BaseGraphId::Bg1, BaseGraphId::Bg2, BaseGraphId::Toy] {
            let g = BaseGraph::bundled(id);
            assert!(g.entries.windows(2).all(|w| (w[0].row, w[0].col) < (w[1].row, w[1].col)));
            // every row has at least two circulants
            for r in 0..g.rows() {
                assert!(g.row_entries(r).count() >= 2, "{id} row {r}");
            }
        }
    }
}
