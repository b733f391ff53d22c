#ifndef HLT_NET_H_
#define HLT_NET_H_

#include <string>
#include <utility>
#include <vector>

#include "hlt/rng.h"
#include "hlt/tape.h"
#include "hlt/tensor.h"

namespace hlt {

enum class Activation { kLinear, kTanh };

struct DenseLayer {
  Param weight;  // (in x out)
  Param bias;    // (1 x out)
  Activation act = Activation::kLinear;

  int in() const { return weight.value.rows; }
  int out() const { return weight.value.cols; }
};

// Plain MLP. Hidden layers use tanh, the output layer activation is chosen
// by the caller (linear for value heads and weight generators).
class DenseNet {
 public:
  DenseNet() = default;
  // sizes = {in, h1, ..., out}. final_scale shrinks the output layer's
  // initial weights (used by hypernetwork generators).
  DenseNet(const std::string& name, const std::vector<int>& sizes, Activation out_act, Rng& rng,
           double final_scale = 1.0);

  int forward(Tape& tape, int x) const;
  Tensor2 forward_nograd(const Tensor2& x) const;

  std::vector<Param*> params();
  std::vector<const Param*> params() const;

  int in_dim() const { return layers_.front().in(); }
  int out_dim() const { return layers_.back().out(); }
  bool empty() const { return layers_.empty(); }

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

 private:
  // mutable to let const forward() register leaves; gradients are owned by
  // the Params themselves and only touched through non-const training paths.
  mutable std::vector<DenseLayer> layers_;
};

// A dense layer whose weights and bias are produced by a generator network
// from a conditioning vector. Gradients flow through both the generated
// weights (into the generator) and the layer input.
class HyperLayer {
 public:
  HyperLayer() = default;
  HyperLayer(const std::string& name, int cond_dim, int gen_hidden, int target_in, int target_out,
             Rng& rng);

  // Generated weights for a fixed conditioning vector (inference path).
  std::pair<Tensor2, Tensor2> generate_nograd(const Tensor2& conditioning) const;
  Tensor2 forward_nograd(const Tensor2& conditioning, const Tensor2& x) const;

  // cond: 1 x cond_dim node, x: batch x target_in node -> batch x target_out.
  int forward(Tape& tape, int cond, int x) const;

  std::vector<Param*> params() { return generator_.params(); }
  std::vector<const Param*> params() const { return generator_.params(); }

  int cond_dim() const { return generator_.in_dim(); }
  int target_in() const { return target_in_; }
  int target_out() const { return target_out_; }

 private:
  DenseNet generator_;
  int target_in_ = 0;
  int target_out_ = 0;
};

}  // namespace hlt

#endif  // HLT_NET_H_
