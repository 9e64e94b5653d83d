//! Reverse-mode automatic differentiation over a flat value arena.
//!
//! The network forward passes are built from a small set of coarse
//! operations (convolution, matrix-vector, gated recurrence pieces,
//! channel max-pooling, cell selection). Each forward pass records its
//! ops on a [`Tape`]; `backward` walks the ops in reverse and
//! accumulates gradients into a parallel arena. Values and gradients
//! live in two flat `Vec<f64>` buffers so a tape can be reset and
//! reused without reallocating.

use alloc::vec;
use alloc::vec::Vec;

/// Handle to a node on the tape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var(u32);

impl Var {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

/// One entity-vector contribution to an assembled representation tensor.
#[derive(Debug, Clone)]
pub struct Placement {
    /// Flat cell index (`row * cols + col`).
    pub cell: usize,
    /// Source node; its full value is added into the cell.
    pub src: Var,
    /// Channel offset within the cell at which the source is added.
    pub channel_offset: usize,
}

#[derive(Debug)]
enum Op {
    Leaf,
    Add(Var, Var),
    Mul(Var, Var),
    Scale(Var, f64),
    AddScalar(Var, f64),
    Sigmoid(Var),
    Tanh(Var),
    Relu(Var),
    Sum(Var),
    /// `w` is `rows x cols` row-major, `x` has length `cols`.
    MatVec {
        w: Var,
        x: Var,
        rows: usize,
        cols: usize,
    },
    Slice {
        a: Var,
        start: usize,
    },
    /// 2-D convolution over a `rows x cols x in_ch` tensor (cell-major,
    /// channel-minor layout) with zero padding.
    Conv2d {
        input: Var,
        kernel: Var,
        bias: Var,
        rows: usize,
        cols: usize,
        in_ch: usize,
        out_ch: usize,
        ksize: usize,
        stride: usize,
        pad_top: usize,
        pad_left: usize,
        out_rows: usize,
        out_cols: usize,
    },
    /// Max over the trailing channel axis; argmax indices cached in `aux`.
    ChannelMax {
        input: Var,
        cells: usize,
        ch: usize,
        aux_start: usize,
    },
    /// Interleaves two `cells`-length maps into a `cells x 2` tensor.
    Stack2(Var, Var),
    /// Scatter-adds entity vectors into a `cells x ch` tensor.
    Assemble {
        ch: usize,
        placements: Vec<Placement>,
    },
}

struct Node {
    offset: usize,
    len: usize,
}

/// Recording tape. Create once, `reset` between forward passes.
pub struct Tape {
    nodes: Vec<Node>,
    ops: Vec<Op>,
    vals: Vec<f64>,
    grads: Vec<f64>,
    aux: Vec<usize>,
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            nodes: Vec::new(),
            ops: Vec::new(),
            vals: Vec::new(),
            grads: Vec::new(),
            aux: Vec::new(),
        }
    }

    /// Clears all recorded state, keeping buffer capacity.
    pub fn reset(&mut self) {
        self.nodes.clear();
        self.ops.clear();
        self.vals.clear();
        self.grads.clear();
        self.aux.clear();
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, len: usize, op: Op) -> Var {
        let offset = self.vals.len();
        self.vals.resize(offset + len, 0.0);
        self.nodes.push(Node { offset, len });
        self.ops.push(op);
        Var((self.nodes.len() - 1) as u32)
    }

    /// Value slice of a node.
    pub fn val(&self, v: Var) -> &[f64] {
        let n = &self.nodes[v.idx()];
        &self.vals[n.offset..n.offset + n.len]
    }

    /// Gradient slice of a node; valid after `backward`.
    pub fn grad(&self, v: Var) -> &[f64] {
        let n = &self.nodes[v.idx()];
        &self.grads[n.offset..n.offset + n.len]
    }

    fn val_mut(&mut self, v: Var) -> &mut [f64] {
        let n = &self.nodes[v.idx()];
        &mut self.vals[n.offset..n.offset + n.len]
    }

    /// Records an input or parameter node.
    pub fn leaf(&mut self, data: &[f64]) -> Var {
        let v = self.push(data.len(), Op::Leaf);
        self.val_mut(v).copy_from_slice(data);
        v
    }

    /// Records a constant all-zero node.
    pub fn zeros(&mut self, len: usize) -> Var {
        self.push(len, Op::Leaf)
    }

    pub fn add(&mut self, a: Var, b: Var) -> Var {
        debug_assert_eq!(self.nodes[a.idx()].len, self.nodes[b.idx()].len);
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Add(a, b));
        let (ao, bo, vo) = (
            self.nodes[a.idx()].offset,
            self.nodes[b.idx()].offset,
            self.nodes[v.idx()].offset,
        );
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + i] + self.vals[bo + i];
        }
        v
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Var {
        debug_assert_eq!(self.nodes[a.idx()].len, self.nodes[b.idx()].len);
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Mul(a, b));
        let (ao, bo, vo) = (
            self.nodes[a.idx()].offset,
            self.nodes[b.idx()].offset,
            self.nodes[v.idx()].offset,
        );
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + i] * self.vals[bo + i];
        }
        v
    }

    pub fn scale(&mut self, a: Var, c: f64) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Scale(a, c));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + i] * c;
        }
        v
    }

    pub fn add_scalar(&mut self, a: Var, c: f64) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::AddScalar(a, c));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + i] + c;
        }
        v
    }

    pub fn sigmoid(&mut self, a: Var) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Sigmoid(a));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = 1.0 / (1.0 + libm::exp(-self.vals[ao + i]));
        }
        v
    }

    pub fn tanh(&mut self, a: Var) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Tanh(a));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = libm::tanh(self.vals[ao + i]);
        }
        v
    }

    pub fn relu(&mut self, a: Var) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(len, Op::Relu(a));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + i].max(0.0);
        }
        v
    }

    /// Sum of all elements, as a length-1 node.
    pub fn sum(&mut self, a: Var) -> Var {
        let len = self.nodes[a.idx()].len;
        let v = self.push(1, Op::Sum(a));
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        let mut s = 0.0;
        for i in 0..len {
            s += self.vals[ao + i];
        }
        self.vals[vo] = s;
        v
    }

    pub fn matvec(&mut self, w: Var, x: Var, rows: usize, cols: usize) -> Var {
        debug_assert_eq!(self.nodes[w.idx()].len, rows * cols);
        debug_assert_eq!(self.nodes[x.idx()].len, cols);
        let v = self.push(rows, Op::MatVec { w, x, rows, cols });
        let (wo, xo, vo) = (
            self.nodes[w.idx()].offset,
            self.nodes[x.idx()].offset,
            self.nodes[v.idx()].offset,
        );
        for r in 0..rows {
            let mut s = 0.0;
            let wrow = wo + r * cols;
            for c in 0..cols {
                s += self.vals[wrow + c] * self.vals[xo + c];
            }
            self.vals[vo + r] = s;
        }
        v
    }

    /// Contiguous sub-range of a node; gradient routes only into that range.
    pub fn slice(&mut self, a: Var, start: usize, len: usize) -> Var {
        debug_assert!(start + len <= self.nodes[a.idx()].len);
        let v = self.push(len, Op::Slice { a, start });
        let (ao, vo) = (self.nodes[a.idx()].offset, self.nodes[v.idx()].offset);
        for i in 0..len {
            self.vals[vo + i] = self.vals[ao + start + i];
        }
        v
    }

    /// Convolution with TensorFlow-style SAME padding: output spatial size
    /// is `ceil(dim / stride)`, zero padding split with the extra row or
    /// column at the bottom/right.
    #[allow(clippy::too_many_arguments)]
    pub fn conv2d_same(
        &mut self,
        input: Var,
        kernel: Var,
        bias: Var,
        rows: usize,
        cols: usize,
        in_ch: usize,
        out_ch: usize,
        ksize: usize,
        stride: usize,
    ) -> Var {
        debug_assert_eq!(self.nodes[input.idx()].len, rows * cols * in_ch);
        debug_assert_eq!(self.nodes[kernel.idx()].len, out_ch * in_ch * ksize * ksize);
        debug_assert_eq!(self.nodes[bias.idx()].len, out_ch);
        let out_rows = rows.div_ceil(stride);
        let out_cols = cols.div_ceil(stride);
        let pad_r = ((out_rows - 1) * stride + ksize).saturating_sub(rows);
        let pad_c = ((out_cols - 1) * stride + ksize).saturating_sub(cols);
        let (pad_top, pad_left) = (pad_r / 2, pad_c / 2);
        let op = Op::Conv2d {
            input,
            kernel,
            bias,
            rows,
            cols,
            in_ch,
            out_ch,
            ksize,
            stride,
            pad_top,
            pad_left,
            out_rows,
            out_cols,
        };
        let v = self.push(out_rows * out_cols * out_ch, op);
        let (io, ko, bo, vo) = (
            self.nodes[input.idx()].offset,
            self.nodes[kernel.idx()].offset,
            self.nodes[bias.idx()].offset,
            self.nodes[v.idx()].offset,
        );
        for orow in 0..out_rows {
            for ocol in 0..out_cols {
                let out_base = vo + (orow * out_cols + ocol) * out_ch;
                for oc in 0..out_ch {
                    let mut s = self.vals[bo + oc];
                    let kbase = ko + oc * in_ch * ksize * ksize;
                    for kr in 0..ksize {
                        let ir = (orow * stride + kr) as isize - pad_top as isize;
                        if ir < 0 || ir >= rows as isize {
                            continue;
                        }
                        for kc in 0..ksize {
                            let icl = (ocol * stride + kc) as isize - pad_left as isize;
                            if icl < 0 || icl >= cols as isize {
                                continue;
                            }
                            let in_base = io + (ir as usize * cols + icl as usize) * in_ch;
                            let kk = kbase + (kr * ksize + kc) * in_ch;
                            for ic in 0..in_ch {
                                s += self.vals[kk + ic] * self.vals[in_base + ic];
                            }
                        }
                    }
                    self.vals[out_base + oc] = s;
                }
            }
        }
        v
    }

    /// Max over the channel axis of a `cells x ch` tensor. Ties resolve to
    /// the lowest channel index.
    pub fn channel_max(&mut self, input: Var, cells: usize, ch: usize) -> Var {
        debug_assert_eq!(self.nodes[input.idx()].len, cells * ch);
        let aux_start = self.aux.len();
        self.aux.resize(aux_start + cells, 0);
        let v = self.push(
            cells,
            Op::ChannelMax {
                input,
                cells,
                ch,
                aux_start,
            },
        );
        let (io, vo) = (self.nodes[input.idx()].offset, self.nodes[v.idx()].offset);
        for cell in 0..cells {
            let base = io + cell * ch;
            let mut best = self.vals[base];
            let mut best_k = 0usize;
            for k in 1..ch {
                if self.vals[base + k] > best {
                    best = self.vals[base + k];
                    best_k = k;
                }
            }
            self.vals[vo + cell] = best;
            self.aux[aux_start + cell] = best_k;
        }
        v
    }

    /// Interleaves two equal-length maps into a two-channel tensor.
    pub fn stack2(&mut self, a: Var, b: Var) -> Var {
        debug_assert_eq!(self.nodes[a.idx()].len, self.nodes[b.idx()].len);
        let cells = self.nodes[a.idx()].len;
        let v = self.push(cells * 2, Op::Stack2(a, b));
        let (ao, bo, vo) = (
            self.nodes[a.idx()].offset,
            self.nodes[b.idx()].offset,
            self.nodes[v.idx()].offset,
        );
        for i in 0..cells {
            self.vals[vo + 2 * i] = self.vals[ao + i];
            self.vals[vo + 2 * i + 1] = self.vals[bo + i];
        }
        v
    }

    /// Builds a `cells x ch` tensor by scatter-adding source vectors into
    /// cells. Cells with no placement stay zero; co-located sources sum.
    pub fn assemble(&mut self, cells: usize, ch: usize, placements: Vec<Placement>) -> Var {
        for p in &placements {
            debug_assert!(p.cell < cells);
            debug_assert!(p.channel_offset + self.nodes[p.src.idx()].len <= ch);
        }
        let v = self.push(cells * ch, Op::Assemble { ch, placements });
        let vo = self.nodes[v.idx()].offset;
        let Op::Assemble { placements, .. } = &self.ops[v.idx()] else {
            unreachable!()
        };
        // Walk placements via indices so vals can be mutated.
        for pi in 0..placements.len() {
            let Op::Assemble { placements, .. } = &self.ops[v.idx()] else {
                unreachable!()
            };
            let p = &placements[pi];
            let src = p.src;
            let (cell, off) = (p.cell, p.channel_offset);
            let so = self.nodes[src.idx()].offset;
            let slen = self.nodes[src.idx()].len;
            let dst = vo + cell * ch + off;
            for i in 0..slen {
                self.vals[dst + i] += self.vals[so + i];
            }
        }
        v
    }

    /// Runs reverse-mode accumulation from a scalar root.
    pub fn backward(&mut self, root: Var) {
        debug_assert_eq!(self.nodes[root.idx()].len, 1);
        self.grads.clear();
        self.grads.resize(self.vals.len(), 0.0);
        self.grads[self.nodes[root.idx()].offset] = 1.0;

        for i in (0..self.ops.len()).rev() {
            let out = &self.nodes[i];
            let (oo, olen) = (out.offset, out.len);
            match &self.ops[i] {
                Op::Leaf => {}
                Op::Add(a, b) => {
                    let (ao, bo) = (self.nodes[a.idx()].offset, self.nodes[b.idx()].offset);
                    for j in 0..olen {
                        let g = self.grads[oo + j];
                        self.grads[ao + j] += g;
                        self.grads[bo + j] += g;
                    }
                }
                Op::Mul(a, b) => {
                    let (ao, bo) = (self.nodes[a.idx()].offset, self.nodes[b.idx()].offset);
                    for j in 0..olen {
                        let g = self.grads[oo + j];
                        self.grads[ao + j] += g * self.vals[bo + j];
                        self.grads[bo + j] += g * self.vals[ao + j];
                    }
                }
                Op::Scale(a, c) => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        self.grads[ao + j] += self.grads[oo + j] * c;
                    }
                }
                Op::AddScalar(a, _) => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        self.grads[ao + j] += self.grads[oo + j];
                    }
                }
                Op::Sigmoid(a) => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        let y = self.vals[oo + j];
                        self.grads[ao + j] += self.grads[oo + j] * y * (1.0 - y);
                    }
                }
                Op::Tanh(a) => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        let y = self.vals[oo + j];
                        self.grads[ao + j] += self.grads[oo + j] * (1.0 - y * y);
                    }
                }
                Op::Relu(a) => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        if self.vals[oo + j] > 0.0 {
                            self.grads[ao + j] += self.grads[oo + j];
                        }
                    }
                }
                Op::Sum(a) => {
                    let an = &self.nodes[a.idx()];
                    let g = self.grads[oo];
                    for j in 0..an.len {
                        self.grads[an.offset + j] += g;
                    }
                }
                Op::MatVec { w, x, rows, cols } => {
                    let (wo, xo) = (self.nodes[w.idx()].offset, self.nodes[x.idx()].offset);
                    for r in 0..*rows {
                        let g = self.grads[oo + r];
                        if g == 0.0 {
                            continue;
                        }
                        let wrow = wo + r * cols;
                        for c in 0..*cols {
                            self.grads[wrow + c] += g * self.vals[xo + c];
                            self.grads[xo + c] += g * self.vals[wrow + c];
                        }
                    }
                }
                Op::Slice { a, start } => {
                    let ao = self.nodes[a.idx()].offset;
                    for j in 0..olen {
                        self.grads[ao + start + j] += self.grads[oo + j];
                    }
                }
                Op::Conv2d {
                    input,
                    kernel,
                    bias,
                    rows,
                    cols,
                    in_ch,
                    out_ch,
                    ksize,
                    stride,
                    pad_top,
                    pad_left,
                    out_rows,
                    out_cols,
                } => {
                    let (io, ko, bo) = (
                        self.nodes[input.idx()].offset,
                        self.nodes[kernel.idx()].offset,
                        self.nodes[bias.idx()].offset,
                    );
                    for orow in 0..*out_rows {
                        for ocol in 0..*out_cols {
                            let out_base = oo + (orow * out_cols + ocol) * out_ch;
                            for oc in 0..*out_ch {
                                let g = self.grads[out_base + oc];
                                if g == 0.0 {
                                    continue;
                                }
                                self.grads[bo + oc] += g;
                                let kbase = ko + oc * in_ch * ksize * ksize;
                                for kr in 0..*ksize {
                                    let ir = (orow * stride + kr) as isize - *pad_top as isize;
                                    if ir < 0 || ir >= *rows as isize {
                                        continue;
                                    }
                                    for kc in 0..*ksize {
                                        let icl =
                                            (ocol * stride + kc) as isize - *pad_left as isize;
                                        if icl < 0 || icl >= *cols as isize {
                                            continue;
                                        }
                                        let in_base =
                                            io + (ir as usize * cols + icl as usize) * in_ch;
                                        let kk = kbase + (kr * ksize + kc) * in_ch;
                                        for ic in 0..*in_ch {
                                            self.grads[kk + ic] += g * self.vals[in_base + ic];
                                            self.grads[in_base + ic] += g * self.vals[kk + ic];
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Op::ChannelMax {
                    input,
                    cells,
                    ch,
                    aux_start,
                } => {
                    let io = self.nodes[input.idx()].offset;
                    for cell in 0..*cells {
                        let k = self.aux[aux_start + cell];
                        self.grads[io + cell * ch + k] += self.grads[oo + cell];
                    }
                }
                Op::Stack2(a, b) => {
                    let (ao, bo) = (self.nodes[a.idx()].offset, self.nodes[b.idx()].offset);
                    let cells = self.nodes[a.idx()].len;
                    for j in 0..cells {
                        self.grads[ao + j] += self.grads[oo + 2 * j];
                        self.grads[bo + j] += self.grads[oo + 2 * j + 1];
                    }
                }
                Op::Assemble { ch, placements } => {
                    for p in placements {
                        let sn = &self.nodes[p.src.idx()];
                        let out_base = oo + p.cell * ch + p.channel_offset;
                        for j in 0..sn.len {
                            self.grads[sn.offset + j] += self.grads[out_base + j];
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Central finite differences of `f` at `inputs`, compared elementwise
    /// against the tape gradient of the same function.
    pub fn finite_diff_check<F>(inputs: &[Vec<f64>], f: F, tol: f64)
    where
        F: Fn(&mut Tape, &[Var]) -> Var,
    {
        let mut tape = Tape::new();
        let vars: Vec<Var> = inputs.iter().map(|x| tape.leaf(x)).collect();
        let root = f(&mut tape, &vars);
        assert_eq!(tape.val(root).len(), 1, "root must be scalar");
        tape.backward(root);
        let analytic: Vec<Vec<f64>> = vars.iter().map(|&v| tape.grad(v).to_vec()).collect();

        let eps = 1e-5;
        for (ti, input) in inputs.iter().enumerate() {
            for j in 0..input.len() {
                let mut run = |delta: f64| {
                    let mut shifted: Vec<Vec<f64>> = inputs.to_vec();
                    shifted[ti][j] += delta;
                    let mut t = Tape::new();
                    let vs: Vec<Var> = shifted.iter().map(|x| t.leaf(x)).collect();
                    let r = f(&mut t, &vs);
                    t.val(r)[0]
                };
                let fd = (run(eps) - run(-eps)) / (2.0 * eps);
                let a = analytic[ti][j];
                let denom = a.abs().max(fd.abs()).max(1e-6);
                assert!(
                    (a - fd).abs() / denom < tol,
                    "input {ti}[{j}]: analytic {a} vs fd {fd}"
                );
            }
        }
    }

    fn rnd(seed: u64, n: usize) -> Vec<f64> {
        use crate::rng;
        use rand::Rng;
        let mut r = rng::chacha(seed, 99);
        (0..n).map(|_| r.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn elementwise_ops_match_finite_differences() {
        let a = rnd(1, 6);
        let b = rnd(2, 6);
        finite_diff_check(&[a, b], |t, v| {
            let m = t.mul(v[0], v[1]);
            let s = t.sigmoid(m);
            let h = t.tanh(v[0]);
            let x = t.add(s, h);
            let r = t.relu(x);
            let sc = t.scale(r, 1.7);
            let sh = t.add_scalar(sc, -0.3);
            t.sum(sh)
        }, 1e-6);
    }

    #[test]
    fn matvec_matches_finite_differences() {
        let w = rnd(3, 12);
        let x = rnd(4, 4);
        finite_diff_check(&[w, x], |t, v| {
            let y = t.matvec(v[0], v[1], 3, 4);
            let s = t.sigmoid(y);
            t.sum(s)
        }, 1e-6);
    }

    #[test]
    fn conv2d_same_stride1_matches_finite_differences() {
        let input = rnd(5, 4 * 4 * 2);
        let kernel = rnd(6, 3 * 2 * 3 * 3);
        let bias = rnd(7, 3);
        finite_diff_check(&[input, kernel, bias], |t, v| {
            let y = t.conv2d_same(v[0], v[1], v[2], 4, 4, 2, 3, 3, 1);
            let s = t.tanh(y);
            t.sum(s)
        }, 1e-6);
    }

    #[test]
    fn conv2d_same_strided_matches_finite_differences() {
        let input = rnd(8, 6 * 6 * 3);
        let kernel = rnd(9, 2 * 3 * 4 * 4);
        let bias = rnd(10, 2);
        finite_diff_check(&[input, kernel, bias], |t, v| {
            let y = t.conv2d_same(v[0], v[1], v[2], 6, 6, 3, 2, 4, 3);
            let s = t.sigmoid(y);
            t.sum(s)
        }, 1e-6);
    }

    #[test]
    fn channel_max_routes_gradient_to_argmax() {
        let input = rnd(11, 4 * 3);
        finite_diff_check(&[input], |t, v| {
            let m = t.channel_max(v[0], 4, 3);
            let s = t.tanh(m);
            t.sum(s)
        }, 1e-6);
    }

    #[test]
    fn stack_slice_assemble_match_finite_differences() {
        let a = rnd(12, 6);
        let b = rnd(13, 6);
        let e = rnd(14, 2);
        finite_diff_check(&[a, b, e], |t, v| {
            let st = t.stack2(v[0], v[1]);
            let sl = t.slice(st, 2, 4);
            let asm = t.assemble(
                3,
                4,
                vec![
                    Placement { cell: 0, src: sl, channel_offset: 0 },
                    Placement { cell: 2, src: v[2], channel_offset: 1 },
                    Placement { cell: 2, src: v[2], channel_offset: 1 },
                ],
            );
            let s = t.sigmoid(asm);
            t.sum(s)
        }, 1e-6);
    }

    #[test]
    fn conv_same_padding_output_dims() {
        let mut t = Tape::new();
        let input = t.zeros(8 * 8);
        let kernel = t.zeros(1 * 1 * 4 * 4);
        let bias = t.zeros(1);
        let y = t.conv2d_same(input, kernel, bias, 8, 8, 1, 1, 4, 3);
        assert_eq!(t.val(y).len(), 3 * 3);
        let y2 = t.conv2d_same(input, kernel, bias, 8, 8, 1, 1, 4, 1);
        assert_eq!(t.val(y2).len(), 8 * 8);
    }

    #[test]
    fn reset_reuses_capacity() {
        let mut t = Tape::new();
        let a = t.leaf(&[1.0, 2.0]);
        let _ = t.sum(a);
        t.reset();
        assert!(t.is_empty());
        let b = t.leaf(&[3.0]);
        assert_eq!(t.val(b), &[3.0]);
    }
}
