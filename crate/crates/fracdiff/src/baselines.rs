//! Reference values for the three bundled convergence tables.
//!
//! Each cell records the published max error at t = 1/2 (and, from the
//! second refinement level on, the published observed rate) for the
//! manufactured benchmarks under the table's step-size coupling:
//! table 1 — 1D implicit, tau = dx; table 2 — 1D implicit,
//! tau = dx^(2/(2-gamma)) with gamma = 0.9; table 3 — 2D implicit,
//! tau = dx = dy. The `reproduce` path recomputes every cell and gates on
//! agreement with these numbers.

/// One refinement level of a reference column.
#[derive(Debug, Clone, Copy)]
pub struct BaselineCell {
    /// Cells per axis.
    pub n: usize,
    /// Published max error at t = 1/2.
    pub error: f64,
    /// Published observed rate w.r.t. the previous level (absent on the
    /// coarsest level).
    pub rate: Option<f64>,
}

/// One (orders, coupling) column of a reference table.
#[derive(Debug, Clone, Copy)]
pub struct BaselineColumn {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub gamma: f64,
    pub cells: [BaselineCell; 4],
}

const fn cell(n: usize, error: f64, rate: Option<f64>) -> BaselineCell {
    BaselineCell { n, error, rate }
}

/// Table 1: 1D implicit scheme, tau = dx, N in {40, 80, 160, 320}.
pub const TABLE1: [BaselineColumn; 6] = [
    // alpha = 1.2, gamma = 0.9
    BaselineColumn {
        alpha: 1.2,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(40, 3.1438e-4, None),
            cell(80, 1.4713e-4, Some(1.0954)),
            cell(160, 6.8748e-5, Some(1.0977)),
            cell(320, 3.2097e-5, Some(1.0989)),
        ],
    },
    // alpha = 1.2, gamma = 0.5
    BaselineColumn {
        alpha: 1.2,
        beta: None,
        gamma: 0.5,
        cells: [
            cell(40, 6.3187e-5, None),
            cell(80, 2.2183e-5, Some(1.5102)),
            cell(160, 7.7888e-6, Some(1.5100)),
            cell(320, 2.7378e-6, Some(1.5084)),
        ],
    },
    // alpha = 1.2, gamma = 0.1
    BaselineColumn {
        alpha: 1.2,
        beta: None,
        gamma: 0.1,
        cells: [
            cell(40, 2.7395e-5, None),
            cell(80, 7.6703e-6, Some(1.8366)),
            cell(160, 2.0317e-6, Some(1.9166)),
            cell(320, 5.2912e-7, Some(1.9410)),
        ],
    },
    // alpha = 1.9, gamma = 0.9
    BaselineColumn {
        alpha: 1.9,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(40, 2.7655e-4, None),
            cell(80, 1.2919e-4, Some(1.0981)),
            cell(160, 6.0294e-5, Some(1.0994)),
            cell(320, 2.8133e-5, Some(1.0997)),
        ],
    },
    // alpha = 1.9, gamma = 0.5
    BaselineColumn {
        alpha: 1.9,
        beta: None,
        gamma: 0.5,
        cells: [
            cell(40, 5.6774e-5, None),
            cell(80, 1.9669e-5, Some(1.5293)),
            cell(160, 6.8351e-6, Some(1.5249)),
            cell(320, 2.3841e-6, Some(1.5195)),
        ],
    },
    // alpha = 1.9, gamma = 0.1
    BaselineColumn {
        alpha: 1.9,
        beta: None,
        gamma: 0.1,
        cells: [
            cell(40, 2.1114e-5, None),
            cell(80, 5.4717e-6, Some(1.9482)),
            cell(160, 1.4145e-6, Some(1.9517)),
            cell(320, 3.6518e-7, Some(1.9536)),
        ],
    },
];

/// Table 2: 1D implicit scheme, gamma = 0.9, tau = dx^(2/(2-gamma)),
/// N in {10, 20, 40, 80}. The alpha = 0.3 column exercises the
/// subdiffusive-order extension of the spatial operator.
pub const TABLE2: [BaselineColumn; 4] = [
    // alpha = 1.9
    BaselineColumn {
        alpha: 1.9,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(10, 2.4699e-4, None),
            cell(20, 6.2966e-5, Some(1.9718)),
            cell(40, 1.5697e-5, Some(2.0041)),
            cell(80, 3.9368e-6, Some(1.9954)),
        ],
    },
    // alpha = 1.5
    BaselineColumn {
        alpha: 1.5,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(10, 2.5801e-4, None),
            cell(20, 6.5569e-5, Some(1.9763)),
            cell(40, 1.6226e-5, Some(2.0148)),
            cell(80, 4.0475e-6, Some(2.0032)),
        ],
    },
    // alpha = 1.2
    BaselineColumn {
        alpha: 1.2,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(10, 2.5510e-4, None),
            cell(20, 6.4560e-5, Some(1.9823)),
            cell(40, 1.5934e-5, Some(2.0185)),
            cell(80, 4.0433e-6, Some(1.9785)),
        ],
    },
    // alpha = 0.3
    BaselineColumn {
        alpha: 0.3,
        beta: None,
        gamma: 0.9,
        cells: [
            cell(10, 2.4135e-4, None),
            cell(20, 6.1043e-5, Some(1.9832)),
            cell(40, 1.5085e-5, Some(2.0167)),
            cell(80, 3.7583e-6, Some(2.0050)),
        ],
    },
];

/// Table 3: 2D implicit scheme, tau = dx = dy, N in {10, 20, 30, 40}.
pub const TABLE3: [BaselineColumn; 6] = [
    // gamma = 0.9, alpha = 1.2, beta = 1.3
    BaselineColumn {
        alpha: 1.2,
        beta: Some(1.3),
        gamma: 0.9,
        cells: [
            cell(10, 7.7867e-5, None),
            cell(20, 3.6381e-5, Some(1.0978)),
            cell(30, 2.3084e-5, Some(1.1220)),
            cell(40, 1.6839e-5, Some(1.0965)),
        ],
    },
    // gamma = 0.5, alpha = 1.2, beta = 1.3
    BaselineColumn {
        alpha: 1.2,
        beta: Some(1.3),
        gamma: 0.5,
        cells: [
            cell(10, 3.1936e-5, None),
            cell(20, 1.0357e-5, Some(1.6246)),
            cell(30, 5.4951e-6, Some(1.5632)),
            cell(40, 3.4925e-6, Some(1.5755)),
        ],
    },
    // gamma = 0.1, alpha = 1.2, beta = 1.3
    BaselineColumn {
        alpha: 1.2,
        beta: Some(1.3),
        gamma: 0.1,
        cells: [
            cell(10, 2.2077e-5, None),
            cell(20, 5.6507e-6, Some(1.9660)),
            cell(30, 2.5497e-6, Some(1.9627)),
            cell(40, 1.4509e-6, Some(1.9598)),
        ],
    },
    // gamma = 0.9, alpha = 1.8, beta = 1.7
    BaselineColumn {
        alpha: 1.8,
        beta: Some(1.7),
        gamma: 0.9,
        cells: [
            cell(10, 7.8209e-5, None),
            cell(20, 3.6912e-5, Some(1.0832)),
            cell(30, 2.3535e-5, Some(1.1099)),
            cell(40, 1.7122e-5, Some(1.1060)),
        ],
    },
    // gamma = 0.5, alpha = 1.8, beta = 1.7
    BaselineColumn {
        alpha: 1.8,
        beta: Some(1.7),
        gamma: 0.5,
        cells: [
            cell(10, 3.1251e-5, None),
            cell(20, 1.0369e-5, Some(1.5917)),
            cell(30, 5.5386e-6, Some(1.5465)),
            cell(40, 3.5433e-6, Some(1.5527)),
        ],
    },
    // gamma = 0.1, alpha = 1.8, beta = 1.7
    BaselineColumn {
        alpha: 1.8,
        beta: Some(1.7),
        gamma: 0.1,
        cells: [
            cell(10, 2.0743e-5, None),
            cell(20, 5.5573e-6, Some(1.9002)),
            cell(30, 2.5115e-6, Some(1.9588)),
            cell(40, 1.4310e-6, Some(1.9552)),
        ],
    },
];
