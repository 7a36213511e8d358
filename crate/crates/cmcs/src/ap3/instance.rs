//! Three-index assignment instances: an n x n x n integer cost tensor.
//!
//! Three generated families share the benchmark conventions: Random draws
//! every cell i.i.d. uniform from {1..100}; Clique and SquareRoot derive the
//! cell from three pairwise weights w(i,j), w(j,k), w(i,k), each uniform from
//! {1..100}, by sum or by rounded Euclidean norm. Generation is a pure
//! function of (family, n, seed).

use super::Ap3Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

pub const WEIGHT_MIN: i64 = 1;
pub const WEIGHT_MAX: i64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Clique,
    SquareRoot,
    External,
}

impl Family {
    pub fn token(&self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Clique => "clique",
            Family::SquareRoot => "sqrt",
            Family::External => "external",
        }
    }

    pub fn from_token(token: &str) -> Option<Family> {
        match token {
            "random" => Some(Family::Random),
            "clique" => Some(Family::Clique),
            "sqrt" => Some(Family::SquareRoot),
            "external" => Some(Family::External),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ap3Instance {
    n: usize,
    /// Row-major: cost(i, j, k) at i*n*n + j*n + k.
    costs: Vec<i64>,
    family: Family,
    seed: u64,
    name: String,
}

impl Ap3Instance {
    /// Generates one instance of a synthetic family. `External` cannot be
    /// generated; it marks instances read from files.
    pub fn generate(family: Family, n: usize, seed: u64) -> Result<Self, Ap3Error> {
        Self::generate_scaled(family, n, seed, 1)
    }

    /// SquareRoot cells are rounded to the nearest integer by default
    /// (scale 1). A larger scale keeps fixed-point precision, e.g. 1000
    /// stores round(1000 * norm) for rounding-sensitivity studies while all
    /// arithmetic stays integral.
    pub fn generate_scaled(
        family: Family,
        n: usize,
        seed: u64,
        sqrt_scale: i64,
    ) -> Result<Self, Ap3Error> {
        if n == 0 {
            return Err(Ap3Error::InvalidSize(n));
        }
        if sqrt_scale < 1 {
            return Err(Ap3Error::InvalidScale(sqrt_scale));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw_matrix = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..n * n)
                .map(|_| rng.random_range(WEIGHT_MIN..=WEIGHT_MAX))
                .collect()
        };
        let costs = match family {
            Family::External => return Err(Ap3Error::NotGenerable),
            Family::Random => (0..n * n * n)
                .map(|_| rng.random_range(WEIGHT_MIN..=WEIGHT_MAX))
                .collect(),
            Family::Clique | Family::SquareRoot => {
                let w_ij = draw_matrix(&mut rng);
                let w_jk = draw_matrix(&mut rng);
                let w_ik = draw_matrix(&mut rng);
                let mut costs = Vec::with_capacity(n * n * n);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let a = w_ij[i * n + j];
                            let b = w_jk[j * n + k];
                            let c = w_ik[i * n + k];
                            costs.push(if family == Family::Clique {
                                a + b + c
                            } else {
                                let norm = ((a * a + b * b + c * c) as f64).sqrt();
                                (norm * sqrt_scale as f64).round() as i64
                            });
                        }
                    }
                }
                costs
            }
        };
        Ok(Ap3Instance {
            n,
            costs,
            family,
            seed,
            name: format!("{}-n{}-s{}", family.token(), n, seed),
        })
    }

    pub fn from_costs(
        n: usize,
        costs: Vec<i64>,
        family: Family,
        seed: u64,
        name: impl Into<String>,
    ) -> Result<Self, Ap3Error> {
        if n == 0 {
            return Err(Ap3Error::InvalidSize(n));
        }
        if costs.len() != n * n * n {
            return Err(Ap3Error::WrongTensorLength {
                expected: n * n * n,
                found: costs.len(),
            });
        }
        Ok(Ap3Instance {
            n,
            costs,
            family,
            seed,
            name: name.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize, k: usize) -> i64 {
        self.costs[(i * self.n + j) * self.n + k]
    }

    /// Text block layout: a header line `AP3 <n> <family> <seed>`, then for
    /// each i a blank-line-separated block of n lines, where line j lists
    /// cost(i, j, k) for k = 0..n. Lines starting with `#` are comments.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "AP3 {} {} {}", self.n, self.family.token(), self.seed)?;
        for i in 0..self.n {
            for j in 0..self.n {
                let row: Vec<String> = (0..self.n)
                    .map(|k| self.cost(i, j, k).to_string())
                    .collect();
                writeln!(w, "{}", row.join(" "))?;
            }
            if i + 1 < self.n {
                writeln!(w)?;
            }
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R, name: impl Into<String>) -> Result<Self, Ap3Error> {
        let mut header: Option<(usize, Family, u64)> = None;
        let mut costs: Vec<i64> = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let fields: Vec<&str> = trimmed.split_whitespace().collect();
                    if fields.len() != 4 || fields[0] != "AP3" {
                        return Err(Ap3Error::Parse {
                            line: lineno,
                            message: "expected header `AP3 <n> <family> <seed>`".into(),
                        });
                    }
                    let n: usize = fields[1].parse().map_err(|_| Ap3Error::Parse {
                        line: lineno,
                        message: format!("bad size `{}`", fields[1]),
                    })?;
                    if n == 0 {
                        return Err(Ap3Error::InvalidSize(0));
                    }
                    let family = Family::from_token(fields[2]).ok_or_else(|| Ap3Error::Parse {
                        line: lineno,
                        message: format!("unknown family `{}`", fields[2]),
                    })?;
                    let seed: u64 = fields[3].parse().map_err(|_| Ap3Error::Parse {
                        line: lineno,
                        message: format!("bad seed `{}`", fields[3]),
                    })?;
                    header = Some((n, family, seed));
                    costs.reserve(n * n * n);
                }
                Some((n, _, _)) => {
                    let mut count = 0usize;
                    for tok in trimmed.split_whitespace() {
                        let v: i64 = tok.parse().map_err(|_| Ap3Error::Parse {
                            line: lineno,
                            message: format!("bad cost `{tok}`"),
                        })?;
                        costs.push(v);
                        count += 1;
                    }
                    if count != n {
                        return Err(Ap3Error::Parse {
                            line: lineno,
                            message: format!("expected {n} costs on the line, found {count}"),
                        });
                    }
                    if costs.len() > n * n * n {
                        return Err(Ap3Error::Parse {
                            line: lineno,
                            message: "more cost lines than the header announces".into(),
                        });
                    }
                }
            }
        }
        let (n, family, seed) = header.ok_or(Ap3Error::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        if costs.len() != n * n * n {
            return Err(Ap3Error::Parse {
                line: 0,
                message: format!(
                    "expected {} cost values, found {}",
                    n * n * n,
                    costs.len()
                ),
            });
        }
        Ok(Ap3Instance {
            n,
            costs,
            family,
            seed,
            name: name.into(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, Ap3Error> {
        let file = std::fs::File::open(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".to_string());
        Self::read_text(std::io::BufReader::new(file), name)
    }

    pub fn save(&self, path: &Path) -> Result<(), Ap3Error> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_text(&mut file)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_cells(inst: &Ap3Instance) -> impl Iterator<Item = i64> + '_ {
        let n = inst.n();
        (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).map(move |k| inst.cost(i, j, k)))
        })
    }

    #[test]
    fn generation_is_a_pure_function_of_family_size_seed() {
        for family in [Family::Random, Family::Clique, Family::SquareRoot] {
            let a = Ap3Instance::generate(family, 6, 7).unwrap();
            let b = Ap3Instance::generate(family, 6, 7).unwrap();
            assert_eq!(a, b);
            let c = Ap3Instance::generate(family, 6, 8).unwrap();
            assert!(all_cells(&a).zip(all_cells(&c)).any(|(x, y)| x != y));
        }
    }

    #[test]
    fn random_family_cells_are_uniform_in_bounds() {
        let inst = Ap3Instance::generate(Family::Random, 10, 1).unwrap();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for v in all_cells(&inst) {
            assert!((WEIGHT_MIN..=WEIGHT_MAX).contains(&v));
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // 1000 draws: both extremes almost surely hit.
        assert_eq!(lo, WEIGHT_MIN);
        assert_eq!(hi, WEIGHT_MAX);
    }

    #[test]
    fn clique_cells_are_sums_of_three_pairwise_weights() {
        let inst = Ap3Instance::generate(Family::Clique, 7, 2).unwrap();
        for v in all_cells(&inst) {
            assert!((3..=300).contains(&v));
        }
        // cost(i,j,k) = w(i,j) + w(j,k) + w(i,k), so the double difference
        // over (j,k) cancels everything involving i.
        let n = inst.n();
        for j in 0..n {
            for k in 0..n {
                let dd = |i: usize| {
                    inst.cost(i, j, k) - inst.cost(i, j, (k + 1) % n) - inst.cost(i, (j + 1) % n, k)
                        + inst.cost(i, (j + 1) % n, (k + 1) % n)
                };
                let expected = dd(0);
                for i in 1..n {
                    assert_eq!(dd(i), expected, "i={i} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn square_root_cells_are_rounded_norms_of_the_clique_weights() {
        let clique = Ap3Instance::generate(Family::Clique, 6, 3).unwrap();
        let sqrt = Ap3Instance::generate(Family::SquareRoot, 6, 3).unwrap();
        for (s, c) in all_cells(&sqrt).zip(all_cells(&clique)) {
            // Norm bounds for weights in {1..100}.
            assert!((2..=173).contains(&s));
            // Same three weights behind both (same seed, same draw order):
            // norm <= sum <= sqrt(3) * norm, with rounding slack.
            assert!(s <= c, "norm {s} above sum {c}");
            assert!(c as f64 <= 3f64.sqrt() * (s as f64 + 0.5) + 0.001);
        }
    }

    #[test]
    fn square_root_scale_keeps_fixed_point_precision() {
        let coarse = Ap3Instance::generate(Family::SquareRoot, 5, 4).unwrap();
        let fine = Ap3Instance::generate_scaled(Family::SquareRoot, 5, 4, 1000).unwrap();
        for (c, f) in all_cells(&coarse).zip(all_cells(&fine)) {
            // Same norm, rounded at different scales.
            assert!((f - c * 1000).abs() <= 500, "coarse {c} fine {f}");
        }
    }

    #[test]
    fn generation_rejects_bad_parameters() {
        assert!(matches!(
            Ap3Instance::generate(Family::Random, 0, 1),
            Err(Ap3Error::InvalidSize(0))
        ));
        assert!(matches!(
            Ap3Instance::generate(Family::External, 3, 1),
            Err(Ap3Error::NotGenerable)
        ));
        assert!(matches!(
            Ap3Instance::generate_scaled(Family::SquareRoot, 3, 1, 0),
            Err(Ap3Error::InvalidScale(0))
        ));
        assert!(matches!(
            Ap3Instance::from_costs(2, vec![1; 7], Family::External, 0, "bad"),
            Err(Ap3Error::WrongTensorLength { expected: 8, found: 7 })
        ));
    }

    #[test]
    fn text_round_trip_is_lossless() {
        for family in [Family::Random, Family::Clique, Family::SquareRoot] {
            for n in 1..=4 {
                let inst = Ap3Instance::generate(family, n, 11).unwrap();
                let mut buf = Vec::new();
                inst.write_text(&mut buf).unwrap();
                let back = Ap3Instance::read_text(buf.as_slice(), inst.name().to_string()).unwrap();
                assert_eq!(inst, back);
            }
        }
    }

    #[test]
    fn reader_skips_comments_and_blank_lines() {
        let text = "# generated fixture\n\nAP3 2 external 0\n# block i=0\n1 2\n3 4\n\n\n5 6\n7 8\n# trailing\n";
        let inst = Ap3Instance::read_text(text.as_bytes(), "fixture").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.family(), Family::External);
        assert_eq!(inst.cost(0, 0, 0), 1);
        assert_eq!(inst.cost(0, 1, 1), 4);
        assert_eq!(inst.cost(1, 0, 1), 6);
        assert_eq!(inst.cost(1, 1, 0), 7);
    }

    #[test]
    fn reader_reports_malformed_input() {
        let bad_header = Ap3Instance::read_text("AP 2 random 0\n".as_bytes(), "x").unwrap_err();
        assert!(matches!(bad_header, Ap3Error::Parse { line: 1, .. }));

        let bad_family = Ap3Instance::read_text("AP3 2 cubic 0\n".as_bytes(), "x").unwrap_err();
        assert!(matches!(bad_family, Ap3Error::Parse { line: 1, .. }));

        let short_line =
            Ap3Instance::read_text("AP3 2 external 0\n1\n".as_bytes(), "x").unwrap_err();
        assert!(matches!(short_line, Ap3Error::Parse { line: 2, .. }));

        let bad_cost =
            Ap3Instance::read_text("AP3 2 external 0\n1 x\n".as_bytes(), "x").unwrap_err();
        assert!(matches!(bad_cost, Ap3Error::Parse { line: 2, .. }));

        let missing = Ap3Instance::read_text("".as_bytes(), "x").unwrap_err();
        assert!(matches!(missing, Ap3Error::Parse { line: 0, .. }));

        let truncated =
            Ap3Instance::read_text("AP3 2 external 0\n1 2\n3 4\n5 6\n".as_bytes(), "x")
                .unwrap_err();
        assert!(matches!(truncated, Ap3Error::Parse { line: 0, .. }));

        let overlong = Ap3Instance::read_text(
            "AP3 1 external 0\n1\n2\n".as_bytes(),
            "x",
        )
        .unwrap_err();
        assert!(matches!(overlong, Ap3Error::Parse { line: 3, .. }));
    }

    #[test]
    fn save_and_load_round_trip() {
        let dir = std::env::temp_dir().join(format!("ap3-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let inst = Ap3Instance::generate(Family::Clique, 3, 5).unwrap();
        let path = dir.join(format!("{}.ap3", inst.name()));
        inst.save(&path).unwrap();
        let back = Ap3Instance::load(&path).unwrap();
        assert_eq!(inst, back);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
