//! Text file formats.
//!
//! Numbers are written with 17 significant digits so that every `f64`
//! survives a round trip. Files are UTF-8 with `\n` line ends and a final
//! newline.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bifiltration::{BifilteredComplex, DistanceMatrix, Simplex};
use crate::error::{Error, Result};
use crate::grade::{Bigrade, Region, WeightVector};
use crate::multiland::LandscapeGrid;
use crate::persistence::Barcode;
use crate::rect::{Rect, RectangleBarcode};

/// Formats like C's `%.17g`, with `inf`, `-inf` and `nan` for non-finite
/// values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses a real, accepting `inf` / `-inf` in any case.
pub fn parse_num(s: &str) -> Option<f64> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" => Some(f64::INFINITY),
        "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
        _ => t.parse().ok(),
    }
}

fn parse_finite(s: &str, path: &Path, line: usize, what: &str) -> Result<f64> {
    match parse_num(s) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(path, line, format!("{what}: expected a finite number, got {s:?}"))),
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Lines with comments (`#` to end of line) removed, paired with their
/// 1-based line number. Blank lines are kept.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (i + 1, l.trim())
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

// ---------------------------------------------------------------------------
// Bifiltered complexes

/// One simplex per line: `v0 v1 ... vk ; a1 a2 [; a1' a2' ...]`.
pub fn parse_complex(text: &str, path: &Path) -> Result<BifilteredComplex> {
    let mut simplices = Vec::new();
    let mut n_vertices = 0;
    for (ln, line) in content_lines(text) {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(';');
        let verts = parts.next().unwrap_or("");
        let vertices: Vec<usize> = verts
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(path, ln, format!("bad vertex id {t:?}")))
            })
            .collect::<Result<_>>()?;
        let mut grades = Vec::new();
        for g in parts {
            let c: Vec<&str> = g.split_whitespace().collect();
            if c.len() != 2 {
                return Err(Error::parse(path, ln, format!("grade {:?} must have two coordinates", g.trim())));
            }
            grades.push(Bigrade::new(
                parse_finite(c[0], path, ln, "grade")?,
                parse_finite(c[1], path, ln, "grade")?,
            ));
        }
        if let Some(&m) = vertices.iter().max() {
            n_vertices = n_vertices.max(m + 1);
        }
        let s = Simplex::new(vertices, grades).map_err(|e| Error::parse(path, ln, e.to_string()))?;
        simplices.push(s);
    }
    BifilteredComplex::new_monotone(n_vertices, simplices).map_err(|e| match e {
        Error::InvalidInput(m) => Error::parse(path, 0, m),
        other => other,
    })
}

pub fn read_complex(path: &Path) -> Result<BifilteredComplex> {
    parse_complex(&read_text(path)?, path)
}

pub fn format_complex(complex: &BifilteredComplex) -> String {
    let mut out = String::new();
    for s in complex.simplices() {
        let v: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&v.join(" "));
        for g in s.grades() {
            let _ = write!(out, " ; {} {}", fmt_num(g.x1), fmt_num(g.x2));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Point clouds and distance matrices

/// Coordinates and an optional function value per point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec<f64>>,
    pub values: Option<Vec<f64>>,
}

/// CSV with a header row; a final column named `f` holds vertex values.
pub fn parse_point_cloud(text: &str, path: &Path) -> Result<PointCloud> {
    let mut lines = content_lines(text).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "missing header row"))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_f = names.last() == Some(&"f");
    let n_coords = names.len() - usize::from(has_f);
    if n_coords == 0 {
        return Err(Error::parse(path, hl, "no coordinate columns"));
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    for (ln, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != names.len() {
            return Err(Error::parse(
                path,
                ln,
                format!("expected {} columns, found {}", names.len(), cells.len()),
            ));
        }
        let row: Vec<f64> = cells
            .iter()
            .map(|c| parse_finite(c, path, ln, "coordinate"))
            .collect::<Result<_>>()?;
        points.push(row[..n_coords].to_vec());
        if has_f {
            values.push(row[n_coords]);
        }
    }
    Ok(PointCloud {
        points,
        values: has_f.then_some(values),
    })
}

pub fn read_point_cloud(path: &Path) -> Result<PointCloud> {
    parse_point_cloud(&read_text(path)?, path)
}

pub fn format_point_cloud(points: &[Vec<f64>], values: Option<&[f64]>) -> String {
    let dim = points.first().map_or(2, Vec::len);
    let mut names: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    if values.is_some() {
        names.push("f".into());
    }
    let mut out = names.join(",");
    out.push('\n');
    for (i, p) in points.iter().enumerate() {
        let mut row: Vec<String> = p.iter().map(|&v| fmt_num(v)).collect();
        if let Some(v) = values {
            row.push(fmt_num(v[i]));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Lower-triangular rows: row `i` lists `d(i, 0) .. d(i, i - 1)`. The empty
/// first row may be omitted.
pub fn parse_distance_matrix(text: &str, path: &Path) -> Result<DistanceMatrix> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| parse_finite(t, path, ln, "distance"))
            .collect::<Result<_>>()?;
        rows.push((ln, vals));
    }
    while rows.last().is_some_and(|(_, r)| r.is_empty()) {
        rows.pop();
    }
    // Leading blank lines other than the row-0 line are not meaningful.
    let first_nonempty = rows.iter().position(|(_, r)| !r.is_empty()).unwrap_or(rows.len());
    let start = if first_nonempty > 0 && rows[first_nonempty - 1].1.is_empty() {
        first_nonempty - 1
    } else {
        first_nonempty
    };
    let rows = &rows[start..];
    let offset = match rows.first() {
        Some((_, r)) if r.len() == 1 => 1,
        _ => 0,
    };
    let n = rows.len() + offset;
    let mut data = vec![0.0; n * n];
    for (k, (ln, r)) in rows.iter().enumerate() {
        let i = k + offset;
        if r.len() != i {
            return Err(Error::parse(path, *ln, format!("row {i} must have {i} entries, found {}", r.len())));
        }
        for (j, &d) in r.iter().enumerate() {
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    DistanceMatrix::from_vec(n, data).map_err(|e| Error::parse(path, 0, e.to_string()))
}

pub fn read_distance_matrix(path: &Path) -> Result<DistanceMatrix> {
    parse_distance_matrix(&read_text(path)?, path)
}

pub fn format_distance_matrix(d: &DistanceMatrix) -> String {
    let mut out = String::new();
    for i in 0..d.len() {
        let row: Vec<String> = (0..i).map(|j| fmt_num(d.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Barcodes, rectangles, values

pub fn format_barcode(barcode: &Barcode) -> String {
    let mut out = String::from("dim,birth,death\n");
    for b in &barcode.bars {
        let _ = writeln!(out, "{},{},{}", b.dim, fmt_num(b.birth), fmt_num(b.death));
    }
    out
}

pub fn parse_barcode(text: &str, path: &Path) -> Result<Vec<crate::persistence::Bar>> {
    let mut bars = Vec::new();
    for (ln, line) in content_lines(text) {
        if line.is_empty() || line.starts_with("dim") {
            continue;
        }
        let c: Vec<&str> = line.split(',').collect();
        if c.len() != 3 {
            return Err(Error::parse(path, ln, "expected dim,birth,death"));
        }
        let dim = c[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, ln, format!("bad dimension {:?}", c[0])))?;
        let birth = parse_finite(c[1], path, ln, "birth")?;
        let death = parse_num(c[2]).ok_or_else(|| Error::parse(path, ln, format!("bad death {:?}", c[2])))?;
        bars.push(crate::persistence::Bar::new(birth, death, dim));
    }
    Ok(bars)
}

/// One `a1 a2 b1 b2` line per rectangle.
pub fn parse_rects(text: &str, path: &Path) -> Result<RectangleBarcode> {
    let mut rects = Vec::new();
    for (ln, line) in content_lines(text) {
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| parse_finite(t, path, ln, "corner"))
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::parse(path, ln, "expected four numbers a1 a2 b1 b2"));
        }
        let r = Rect::new(Bigrade::new(v[0], v[1]), Bigrade::new(v[2], v[3]))
            .map_err(|e| Error::parse(path, ln, e.to_string()))?;
        rects.push(r);
    }
    Ok(RectangleBarcode::new(rects))
}

pub fn read_rects(path: &Path) -> Result<RectangleBarcode> {
    parse_rects(&read_text(path)?, path)
}

pub fn format_rects(rects: &RectangleBarcode) -> String {
    let mut out = String::new();
    for r in &rects.rects {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            fmt_num(r.a.x1),
            fmt_num(r.a.x2),
            fmt_num(r.b.x1),
            fmt_num(r.b.x2)
        );
    }
    out
}

/// One real per line; blank lines and comments ignored.
pub fn parse_values(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (ln, line) in content_lines(text) {
        for tok in line.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
            out.push(parse_finite(tok, path, ln, "value")?);
        }
    }
    Ok(out)
}

pub fn read_values(path: &Path) -> Result<Vec<f64>> {
    parse_values(&read_text(path)?, path)
}

pub fn format_values(values: &[f64]) -> String {
    let mut out = String::new();
    for &v in values {
        out.push_str(&fmt_num(v));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Landscape grids

/// Metadata written next to the per-level CSV matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridManifest {
    pub region: Region,
    pub resolution: f64,
    pub k_max: usize,
    pub weight: [f64; 2],
    pub hom_dim: usize,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    /// CSV file per level, relative to the manifest.
    pub levels: Vec<String>,
    /// PGM heatmap per level, if written.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub heatmaps: Vec<String>,
}

impl GridManifest {
    pub fn of(grid: &LandscapeGrid, heatmaps: bool) -> Self {
        GridManifest {
            region: grid.region,
            resolution: grid.resolution,
            k_max: grid.k_max,
            weight: [grid.weight.w1(), grid.weight.w2()],
            hom_dim: grid.hom_dim,
            axis1: grid.axis1.clone(),
            axis2: grid.axis2.clone(),
            levels: (1..=grid.k_max).map(|k| format!("lambda_{k}.csv")).collect(),
            heatmaps: if heatmaps {
                (1..=grid.k_max).map(|k| format!("lambda_{k}.pgm")).collect()
            } else {
                Vec::new()
            },
        }
    }

    /// Hash of the metadata alone, identifying the grid shape.
    pub fn shape_hash(&self) -> String {
        let shape = serde_json::json!({
            "region": self.region,
            "resolution": self.resolution,
            "k_max": self.k_max,
            "weight": self.weight,
            "hom_dim": self.hom_dim,
            "axis1": self.axis1,
            "axis2": self.axis2,
        });
        sha256_hex(shape.to_string().as_bytes())
    }
}

/// Serializes through `serde_json`, pretty-printed with a final newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Level `k` as CSV: rows from the largest x2 down, columns by increasing x1.
pub fn format_grid_level(grid: &LandscapeGrid, k: usize) -> String {
    let mut out = String::new();
    for j in (0..grid.n2()).rev() {
        let row: Vec<String> = (0..grid.n1()).map(|i| fmt_num(grid.get(k, j, i))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// PGM (P2) heatmap of level `k` scaled by `global_max`.
pub fn format_pgm(grid: &LandscapeGrid, k: usize, global_max: f64) -> String {
    let mut out = format!("P2\n{} {}\n255\n", grid.n1(), grid.n2());
    for j in (0..grid.n2()).rev() {
        let row: Vec<String> = (0..grid.n1())
            .map(|i| {
                let v = grid.get(k, j, i);
                let p = if global_max > 0.0 {
                    (255.0 * v / global_max).round().clamp(0.0, 255.0) as u32
                } else {
                    0
                };
                p.to_string()
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Writes `manifest.json` plus one CSV (and optionally one PGM) per level
/// into `dir`. Returns the written paths.
pub fn write_grid(grid: &LandscapeGrid, dir: &Path, heatmaps: bool) -> Result<Vec<PathBuf>> {
    let manifest = GridManifest::of(grid, heatmaps);
    let mut written = Vec::new();
    let global_max = grid.max_value();
    for k in 1..=grid.k_max {
        let p = dir.join(&manifest.levels[k - 1]);
        write_text(&p, &format_grid_level(grid, k))?;
        written.push(p);
        if heatmaps {
            let p = dir.join(&manifest.heatmaps[k - 1]);
            write_text(&p, &format_pgm(grid, k, global_max))?;
            written.push(p);
        }
    }
    let p = dir.join("manifest.json");
    write_text(&p, &to_json(&manifest))?;
    written.push(p);
    Ok(written)
}

/// Reads a grid from its manifest path or from the directory holding it.
pub fn read_grid(path: &Path) -> Result<LandscapeGrid> {
    let manifest_path = if path.is_dir() {
        path.join("manifest.json")
    } else {
        path.to_path_buf()
    };
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let text = read_text(&manifest_path)?;
    let m: GridManifest = serde_json::from_str(&text).map_err(|e| {
        Error::parse(&manifest_path, e.line(), format!("bad grid manifest: {e}"))
    })?;
    let weight = WeightVector::new(m.weight[0], m.weight[1])
        .map_err(|e| Error::parse(&manifest_path, 0, e.to_string()))?;
    if m.levels.len() != m.k_max {
        return Err(Error::parse(&manifest_path, 0, "level count does not match k_max"));
    }
    let (n1, n2) = (m.axis1.len(), m.axis2.len());
    let mut grid = LandscapeGrid::zeros(
        m.region,
        m.resolution,
        m.k_max,
        weight,
        m.hom_dim,
        m.axis1.clone(),
        m.axis2.clone(),
    );
    for (k, name) in m.levels.iter().enumerate() {
        let p = dir.join(name);
        let text = read_text(&p)?;
        let rows: Vec<(usize, &str)> = content_lines(&text).filter(|(_, l)| !l.is_empty()).collect();
        if rows.len() != n2 {
            return Err(Error::parse(&p, 0, format!("expected {n2} rows, found {}", rows.len())));
        }
        for (r, (ln, line)) in rows.iter().enumerate() {
            let j = n2 - 1 - r;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != n1 {
                return Err(Error::parse(&p, *ln, format!("expected {n1} columns, found {}", cells.len())));
            }
            for (i, c) in cells.iter().enumerate() {
                let v = parse_finite(c, &p, *ln, "landscape value")?;
                grid.values[(k * n2 + j) * n1 + i] = v;
            }
        }
    }
    Ok(grid)
}

/// Feature matrix: a metadata-hash comment, a header, then one row per
/// sample in [`crate::stats::vectorize`] order.
pub fn format_features(labels: &[String], grids: &[LandscapeGrid]) -> Result<String> {
    let first = grids.first().ok_or_else(|| Error::input("no grids to vectorize"))?;
    if grids.iter().any(|g| !g.same_shape(first)) {
        return Err(Error::input("grids to vectorize differ in shape"));
    }
    let hash = GridManifest::of(first, false).shape_hash();
    let width = first.values.len();
    let mut out = format!("# grid_sha256={hash}\nlabel");
    for c in 0..width {
        let _ = write!(out, ",f{c}");
    }
    out.push('\n');
    for (label, g) in labels.iter().zip(grids) {
        out.push_str(label);
        for v in crate::stats::vectorize(g) {
            out.push(',');
            out.push_str(&fmt_num(v));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 1e-9, 123456.789, 2.5e20, -7.0, 0.0, 1e300] {
            let s = fmt_num(x);
            assert_eq!(parse_num(&s).unwrap(), x, "{s}");
        }
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(0.1), "0.10000000000000001");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(1e20), "1e+20");
    }

    #[test]
    fn complex_round_trip() {
        let text = "# triangle\n0 ; 0 0\n1 ; 0 0\n0 1 ; 1 2 ; 2 1\n";
        let p = Path::new("t.txt");
        let c = parse_complex(text, p).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.simplex(2).grades().len(), 2);
        let again = parse_complex(&format_complex(&c), p).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn complex_errors_name_the_line() {
        let p = Path::new("bad.txt");
        match parse_complex("0 ; 0 0\n1 ; x 0\n", p) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_complex("0 1 ; 0 0\n", p).is_err());
    }

    #[test]
    fn point_cloud_with_values() {
        let pc = parse_point_cloud("x,y,f\n0,0,1\n3,4,2\n", Path::new("p.csv")).unwrap();
        assert_eq!(pc.points, vec![vec![0.0, 0.0], vec![3.0, 4.0]]);
        assert_eq!(pc.values, Some(vec![1.0, 2.0]));
        let again = parse_point_cloud(&format_point_cloud(&pc.points, pc.values.as_deref()), Path::new("p.csv"))
            .unwrap();
        assert_eq!(again, pc);
        let plain = parse_point_cloud("x,y\n1,2\n", Path::new("p.csv")).unwrap();
        assert_eq!(plain.values, None);
    }

    #[test]
    fn distance_matrix_lower_triangle() {
        let p = Path::new("d.txt");
        let d = parse_distance_matrix("\n1\n2 3\n", p).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.get(0, 2), 2.0);
        assert_eq!(d.get(2, 1), 3.0);
        let omitted = parse_distance_matrix("1\n2 3\n", p).unwrap();
        assert_eq!(omitted, d);
        assert_eq!(parse_distance_matrix(&format_distance_matrix(&d), p).unwrap(), d);
        assert!(parse_distance_matrix("1\n2\n", p).is_err());
    }

    #[test]
    fn barcode_csv() {
        let b = Barcode::from_pairs(1, &[(0.5, f64::INFINITY), (0.0, 2.0)]);
        let s = format_barcode(&b);
        assert_eq!(s, "dim,birth,death\n1,0.5,inf\n1,0,2\n");
        assert_eq!(parse_barcode(&s, Path::new("b.csv")).unwrap(), b.bars);
    }

    #[test]
    fn rect_lines() {
        let r = parse_rects("0 1 10 2\n4 1 6 2 # inner\n", Path::new("r.txt")).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(parse_rects(&format_rects(&r), Path::new("r.txt")).unwrap(), r);
        assert!(parse_rects("0 0 0 1\n", Path::new("r.txt")).is_err());
    }
}
