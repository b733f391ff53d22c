#ifndef HLT_TAPE_H_
#define HLT_TAPE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hlt/tensor.h"

namespace hlt {

// A trainable parameter tensor with its gradient accumulator.
struct Param {
  std::string name;
  Tensor2 value;
  Tensor2 grad;

  Param() = default;
  Param(std::string n, Tensor2 v) : name(std::move(n)), value(std::move(v)) {
    grad = Tensor2(value.rows, value.cols, 0.0);
  }

  void zero_grad() { grad.fill(0.0); }
};

// Reverse-mode computation tape over Tensor2 values. Nodes are appended in
// topological order; backward() walks them in reverse. Masked entries in
// masked_log_softmax are pinned to kMaskedLogit instead of -inf so that
// exp() underflows to exactly zero without producing NaN downstream.
class Tape {
 public:
  static constexpr double kMaskedLogit = -1e30;

  int leaf(Param& p);
  int constant(Tensor2 v);

  int matmul(int a, int b);
  int add(int a, int b);              // same shape
  int add_rowvec(int a, int b);       // (n x m) + (1 x m) broadcast over rows
  int sub(int a, int b);
  int mul(int a, int b);              // elementwise
  int scale(int a, double s);
  int tanh_(int a);
  int exp_(int a);
  int square(int a);
  int min_(int a, int b);             // elementwise; ties route gradient to a
  int max_(int a, int b);
  int slice(int a, int r0, int r1, int c0, int c1);
  int reshape(int a, int r, int c);
  int masked_log_softmax(int a, Tensor2 mask);  // mask entries in {0,1}
  int gather_cols(int a, std::vector<int> idx);  // one column index per row
  int sum_all(int a);
  int mean_all(int a);

  const Tensor2& value(int id) const { return nodes_[id].val; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  // Accumulates d(loss)/d(param) into each touched Param's grad, after
  // zeroing those grads and all node adjoints. loss must be a 1x1 node.
  void backward(int loss);

 private:
  struct Node {
    int op;
    int a = -1, b = -1;
    Tensor2 val;
    Tensor2 adj;
    Param* param = nullptr;
    double scalar = 0.0;
    int r0 = 0, c0 = 0;
    std::vector<int> indices;
    Tensor2 aux;  // mask for masked_log_softmax
  };

  int push(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  std::vector<Param*> params_;
};

}  // namespace hlt

#endif  // HLT_TAPE_H_
