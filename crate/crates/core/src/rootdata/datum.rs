use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};

/// Root datum given by a Cartan matrix with `cartan[i][j] = ⟨α_j, α_i^∨⟩`,
/// so that `s_i(α_j) = α_j - cartan[i][j]·α_i`.
///
/// Simple roots are indexed `0..rank` internally and `1..=rank` in JSON and
/// reports. Finite type is established when the root system is built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct RootDatum {
    cartan: Vec<Vec<i64>>,
    simply_connected: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    cartan: Vec<Vec<i64>>,
    #[serde(default = "yes")]
    simply_connected: bool,
}

fn yes() -> bool {
    true
}

impl TryFrom<RawDatum> for RootDatum {
    type Error = crate::Error;

    fn try_from(raw: RawDatum) -> Result<Self> {
        Self::new(raw.cartan, raw.simply_connected)
    }
}

impl RootDatum {
    pub fn new(cartan: Vec<Vec<i64>>, simply_connected: bool) -> Result<Self> {
        let r = cartan.len();
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != r {
                bail!(Argument, "Cartan matrix is not square");
            }
            if row[i] != 2 {
                bail!(Argument, "diagonal entry ({}, {}) is {}, not 2", i + 1, i + 1, row[i]);
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    bail!(Argument, "off-diagonal entry ({}, {}) is positive", i + 1, j + 1);
                }
                if (a == 0) != (cartan[j][i] == 0) {
                    bail!(
                        Argument,
                        "entries ({}, {}) and ({}, {}) must vanish together",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    );
                }
            }
        }
        Ok(Self {
            cartan,
            simply_connected,
        })
    }

    /// Simply connected datum of a named type: `A<n>`, `B<n>`, `C<n>`,
    /// `D<n>`, `G2`, or products such as `A1xA1`.
    pub fn of_type(name: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in name.split(['x', 'X', '*']) {
            blocks.push(irreducible_cartan(part.trim())?);
        }
        let rank: usize = blocks.iter().map(Vec::len).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for b in blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    cartan[off + i][off + j] = a;
                }
            }
            off += b.len();
        }
        Self::new(cartan, true)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `⟨α_j, α_i^∨⟩`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn simply_connected(&self) -> bool {
        self.simply_connected
    }

    /// The datum spanned by the simple roots in `subset` (sorted, 0-based),
    /// i.e. the semisimple part of the Levi factor.
    pub fn sub_datum(&self, subset: &[usize]) -> Result<Self> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.rank()) {
            bail!(Argument, "index {} outside 1..={}", bad + 1, self.rank());
        }
        let cartan = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        Self::new(cartan, self.simply_connected)
    }
}

fn irreducible_cartan(name: &str) -> Result<Vec<Vec<i64>>> {
    let (kind, n) = name.split_at(name.len().min(1));
    let Ok(n) = n.parse::<usize>() else {
        bail!(Argument, "unknown root system type {name:?}");
    };
    let kind = kind.to_ascii_uppercase();
    let min = match kind.as_str() {
        "A" => 1,
        "B" | "C" => 2,
        "D" => 4,
        "G" if n == 2 => 2,
        _ => bail!(Argument, "unknown root system type {name:?}"),
    };
    if n < min {
        bail!(Argument, "type {kind}{n} needs rank at least {min}");
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match kind.as_str() {
        // α_n short: ⟨α_{n-1}, α_n^∨⟩ = -2.
        "B" => a[n - 1][n - 2] = -2,
        "C" => a[n - 2][n - 1] = -2,
        "D" => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        "G" => a[1][0] = -3,
        _ => {}
    }
    Ok(a)
}
