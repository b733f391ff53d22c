#include "hlt/tape.h"

#include <algorithm>
#include <cmath>

#include "hlt/errors.h"

namespace hlt {
namespace {

enum OpCode {
  kLeaf,
  kConst,
  kMatMul,
  kAdd,
  kAddRowVec,
  kSub,
  kMul,
  kScale,
  kTanh,
  kExp,
  kSquare,
  kMin,
  kMax,
  kSlice,
  kReshape,
  kMaskedLogSoftmax,
  kGatherCols,
  kSumAll,
};

}  // namespace

int Tape::leaf(Param& p) {
  Node n;
  n.op = kLeaf;
  n.val = p.value;
  n.param = &p;
  if (std::find(params_.begin(), params_.end(), &p) == params_.end()) params_.push_back(&p);
  return push(std::move(n));
}

int Tape::constant(Tensor2 v) {
  Node n;
  n.op = kConst;
  n.val = std::move(v);
  return push(std::move(n));
}

int Tape::matmul(int a, int b) {
  Node n;
  n.op = kMatMul;
  n.a = a;
  n.b = b;
  matmul_into(nodes_[a].val, nodes_[b].val, n.val);
  return push(std::move(n));
}

int Tape::add(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (!x.same_shape(y)) throw DimensionError("tape add: shape mismatch");
  Node n;
  n.op = kAdd;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int i = 0; i < n.val.size(); ++i) n.val.data[i] += y.data[i];
  return push(std::move(n));
}

int Tape::add_rowvec(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (y.rows != 1 || y.cols != x.cols) throw DimensionError("tape add_rowvec: shape mismatch");
  Node n;
  n.op = kAddRowVec;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c) n.val.at(r, c) += y.data[c];
  return push(std::move(n));
}

int Tape::sub(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (!x.same_shape(y)) throw DimensionError("tape sub: shape mismatch");
  Node n;
  n.op = kSub;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int i = 0; i < n.val.size(); ++i) n.val.data[i] -= y.data[i];
  return push(std::move(n));
}

int Tape::mul(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (!x.same_shape(y)) throw DimensionError("tape mul: shape mismatch");
  Node n;
  n.op = kMul;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int i = 0; i < n.val.size(); ++i) n.val.data[i] *= y.data[i];
  return push(std::move(n));
}

int Tape::scale(int a, double s) {
  Node n;
  n.op = kScale;
  n.a = a;
  n.scalar = s;
  n.val = nodes_[a].val;
  for (double& v : n.val.data) v *= s;
  return push(std::move(n));
}

int Tape::tanh_(int a) {
  Node n;
  n.op = kTanh;
  n.a = a;
  n.val = nodes_[a].val;
  for (double& v : n.val.data) v = std::tanh(v);
  return push(std::move(n));
}

int Tape::exp_(int a) {
  Node n;
  n.op = kExp;
  n.a = a;
  n.val = nodes_[a].val;
  for (double& v : n.val.data) v = std::exp(v);
  return push(std::move(n));
}

int Tape::square(int a) {
  Node n;
  n.op = kSquare;
  n.a = a;
  n.val = nodes_[a].val;
  for (double& v : n.val.data) v = v * v;
  return push(std::move(n));
}

int Tape::min_(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (!x.same_shape(y)) throw DimensionError("tape min: shape mismatch");
  Node n;
  n.op = kMin;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int i = 0; i < n.val.size(); ++i) n.val.data[i] = std::min(x.data[i], y.data[i]);
  return push(std::move(n));
}

int Tape::max_(int a, int b) {
  const Tensor2& x = nodes_[a].val;
  const Tensor2& y = nodes_[b].val;
  if (!x.same_shape(y)) throw DimensionError("tape max: shape mismatch");
  Node n;
  n.op = kMax;
  n.a = a;
  n.b = b;
  n.val = x;
  for (int i = 0; i < n.val.size(); ++i) n.val.data[i] = std::max(x.data[i], y.data[i]);
  return push(std::move(n));
}

int Tape::slice(int a, int r0, int r1, int c0, int c1) {
  const Tensor2& x = nodes_[a].val;
  if (r0 < 0 || c0 < 0 || r1 > x.rows || c1 > x.cols || r0 >= r1 || c0 >= c1)
    throw DimensionError("tape slice: bad range");
  Node n;
  n.op = kSlice;
  n.a = a;
  n.r0 = r0;
  n.c0 = c0;
  n.val = Tensor2(r1 - r0, c1 - c0);
  for (int r = 0; r < n.val.rows; ++r)
    for (int c = 0; c < n.val.cols; ++c) n.val.at(r, c) = x.at(r0 + r, c0 + c);
  return push(std::move(n));
}

int Tape::reshape(int a, int r, int c) {
  const Tensor2& x = nodes_[a].val;
  if (r * c != x.size()) throw DimensionError("tape reshape: element count mismatch");
  Node n;
  n.op = kReshape;
  n.a = a;
  n.val = Tensor2::from_rows(r, c, x.data);
  return push(std::move(n));
}

int Tape::masked_log_softmax(int a, Tensor2 mask) {
  const Tensor2& x = nodes_[a].val;
  if (!x.same_shape(mask)) throw DimensionError("tape masked_log_softmax: mask shape mismatch");
  Node n;
  n.op = kMaskedLogSoftmax;
  n.a = a;
  n.aux = std::move(mask);
  n.val = Tensor2(x.rows, x.cols);
  for (int r = 0; r < x.rows; ++r) {
    double mx = -1e300;
    bool any = false;
    for (int c = 0; c < x.cols; ++c)
      if (n.aux.at(r, c) != 0.0) {
        any = true;
        mx = std::max(mx, x.at(r, c));
      }
    if (!any) throw ContractError("masked_log_softmax: row with no legal entries");
    double z = 0.0;
    for (int c = 0; c < x.cols; ++c)
      if (n.aux.at(r, c) != 0.0) z += std::exp(x.at(r, c) - mx);
    const double lz = mx + std::log(z);
    for (int c = 0; c < x.cols; ++c)
      n.val.at(r, c) = (n.aux.at(r, c) != 0.0) ? x.at(r, c) - lz : kMaskedLogit;
  }
  return push(std::move(n));
}

int Tape::gather_cols(int a, std::vector<int> idx) {
  const Tensor2& x = nodes_[a].val;
  if (static_cast<int>(idx.size()) != x.rows) throw DimensionError("tape gather_cols: index count != rows");
  Node n;
  n.op = kGatherCols;
  n.a = a;
  n.indices = std::move(idx);
  n.val = Tensor2(x.rows, 1);
  for (int r = 0; r < x.rows; ++r) {
    const int c = n.indices[r];
    if (c < 0 || c >= x.cols) throw ContractError("tape gather_cols: index out of range");
    n.val.at(r, 0) = x.at(r, c);
  }
  return push(std::move(n));
}

int Tape::sum_all(int a) {
  Node n;
  n.op = kSumAll;
  n.a = a;
  n.val = Tensor2(1, 1);
  for (double v : nodes_[a].val.data) n.val.data[0] += v;
  return push(std::move(n));
}

int Tape::mean_all(int a) {
  const int s = sum_all(a);
  return scale(s, 1.0 / nodes_[a].val.size());
}

void Tape::backward(int loss) {
  if (loss < 0 || loss >= static_cast<int>(nodes_.size()))
    throw ContractError("tape backward: bad loss node");
  if (nodes_[loss].val.size() != 1) throw ContractError("tape backward: loss must be scalar");

  for (Node& n : nodes_) {
    n.adj = Tensor2(n.val.rows, n.val.cols, 0.0);
  }
  for (Param* p : params_) p->zero_grad();
  nodes_[loss].adj.data[0] = 1.0;

  for (int id = loss; id >= 0; --id) {
    Node& n = nodes_[id];
    bool used = (id == loss);
    for (double v : n.adj.data)
      if (v != 0.0) {
        used = true;
        break;
      }
    if (!used) continue;
    Node* na = n.a >= 0 ? &nodes_[n.a] : nullptr;
    Node* nb = n.b >= 0 ? &nodes_[n.b] : nullptr;
    switch (n.op) {
      case kLeaf:
        for (int i = 0; i < n.val.size(); ++i) n.param->grad.data[i] += n.adj.data[i];
        break;
      case kConst:
        break;
      case kMatMul:
        matmul_a_bt_accum(n.adj, nb->val, na->adj);
        matmul_at_b_accum(na->val, n.adj, nb->adj);
        break;
      case kAdd:
        for (int i = 0; i < n.val.size(); ++i) {
          na->adj.data[i] += n.adj.data[i];
          nb->adj.data[i] += n.adj.data[i];
        }
        break;
      case kAddRowVec:
        for (int r = 0; r < n.val.rows; ++r)
          for (int c = 0; c < n.val.cols; ++c) {
            na->adj.at(r, c) += n.adj.at(r, c);
            nb->adj.data[c] += n.adj.at(r, c);
          }
        break;
      case kSub:
        for (int i = 0; i < n.val.size(); ++i) {
          na->adj.data[i] += n.adj.data[i];
          nb->adj.data[i] -= n.adj.data[i];
        }
        break;
      case kMul:
        for (int i = 0; i < n.val.size(); ++i) {
          na->adj.data[i] += n.adj.data[i] * nb->val.data[i];
          nb->adj.data[i] += n.adj.data[i] * na->val.data[i];
        }
        break;
      case kScale:
        for (int i = 0; i < n.val.size(); ++i) na->adj.data[i] += n.adj.data[i] * n.scalar;
        break;
      case kTanh:
        for (int i = 0; i < n.val.size(); ++i)
          na->adj.data[i] += n.adj.data[i] * (1.0 - n.val.data[i] * n.val.data[i]);
        break;
      case kExp:
        for (int i = 0; i < n.val.size(); ++i) na->adj.data[i] += n.adj.data[i] * n.val.data[i];
        break;
      case kSquare:
        for (int i = 0; i < n.val.size(); ++i)
          na->adj.data[i] += n.adj.data[i] * 2.0 * na->val.data[i];
        break;
      case kMin:
        for (int i = 0; i < n.val.size(); ++i) {
          if (na->val.data[i] <= nb->val.data[i])
            na->adj.data[i] += n.adj.data[i];
          else
            nb->adj.data[i] += n.adj.data[i];
        }
        break;
      case kMax:
        for (int i = 0; i < n.val.size(); ++i) {
          if (na->val.data[i] >= nb->val.data[i])
            na->adj.data[i] += n.adj.data[i];
          else
            nb->adj.data[i] += n.adj.data[i];
        }
        break;
      case kSlice:
        for (int r = 0; r < n.val.rows; ++r)
          for (int c = 0; c < n.val.cols; ++c) na->adj.at(n.r0 + r, n.c0 + c) += n.adj.at(r, c);
        break;
      case kReshape:
        for (int i = 0; i < n.val.size(); ++i) na->adj.data[i] += n.adj.data[i];
        break;
      case kMaskedLogSoftmax:
        for (int r = 0; r < n.val.rows; ++r) {
          double gsum = 0.0;
          for (int c = 0; c < n.val.cols; ++c)
            if (n.aux.at(r, c) != 0.0) gsum += n.adj.at(r, c);
          for (int c = 0; c < n.val.cols; ++c) {
            if (n.aux.at(r, c) == 0.0) continue;
            const double p = std::exp(n.val.at(r, c));
            na->adj.at(r, c) += n.adj.at(r, c) - p * gsum;
          }
        }
        break;
      case kGatherCols:
        for (int r = 0; r < n.val.rows; ++r) na->adj.at(r, n.indices[r]) += n.adj.at(r, 0);
        break;
      case kSumAll:
        for (int i = 0; i < na->val.size(); ++i) na->adj.data[i] += n.adj.data[0];
        break;
      default:
        throw ContractError("tape backward: unknown op");
    }
  }
}

}  // namespace hlt
