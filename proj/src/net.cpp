#include "hlt/net.h"

#include <cmath>

#include "hlt/errors.h"

namespace hlt {

DenseNet::DenseNet(const std::string& name, const std::vector<int>& sizes, Activation out_act,
                   Rng& rng, double final_scale) {
  if (sizes.size() < 2) throw ConfigError("DenseNet: need at least in/out sizes");
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const bool last = (l + 2 == sizes.size());
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    const double s = last ? final_scale : 1.0;
    DenseLayer layer;
    layer.weight = Param(name + ".L" + std::to_string(l) + ".W", Tensor2(in, out));
    layer.bias = Param(name + ".L" + std::to_string(l) + ".b", Tensor2(1, out));
    for (double& v : layer.weight.value.data) v = s * rng.uniform(-bound, bound);
    for (double& v : layer.bias.value.data) v = s * rng.uniform(-bound, bound);
    layer.act = last ? out_act : Activation::kTanh;
    layers_.push_back(std::move(layer));
  }
}

int DenseNet::forward(Tape& tape, int x) const {
  int h = x;
  for (const DenseLayer& layer : layers_) {
    DenseLayer& l = const_cast<DenseLayer&>(layer);
    h = tape.add_rowvec(tape.matmul(h, tape.leaf(l.weight)), tape.leaf(l.bias));
    if (layer.act == Activation::kTanh) h = tape.tanh_(h);
  }
  return h;
}

Tensor2 DenseNet::forward_nograd(const Tensor2& x) const {
  if (x.cols != in_dim()) throw DimensionError("DenseNet forward: input width mismatch");
  Tensor2 h = x;
  Tensor2 tmp;
  for (const DenseLayer& layer : layers_) {
    matmul_into(h, layer.weight.value, tmp);
    for (int r = 0; r < tmp.rows; ++r)
      for (int c = 0; c < tmp.cols; ++c) tmp.at(r, c) += layer.bias.value.data[c];
    if (layer.act == Activation::kTanh)
      for (double& v : tmp.data) v = std::tanh(v);
    h = tmp;
  }
  return h;
}

std::vector<Param*> DenseNet::params() {
  std::vector<Param*> out;
  for (DenseLayer& l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

std::vector<const Param*> DenseNet::params() const {
  std::vector<const Param*> out;
  for (const DenseLayer& l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

HyperLayer::HyperLayer(const std::string& name, int cond_dim, int gen_hidden, int target_in,
                       int target_out, Rng& rng)
    : generator_(name + ".gen", {cond_dim, gen_hidden, target_in * target_out + target_out},
                 Activation::kLinear, rng, /*final_scale=*/0.1),
      target_in_(target_in),
      target_out_(target_out) {}

std::pair<Tensor2, Tensor2> HyperLayer::generate_nograd(const Tensor2& conditioning) const {
  if (conditioning.rows != 1 || conditioning.cols != generator_.in_dim())
    throw DimensionError("HyperLayer: conditioning length mismatch");
  Tensor2 flat = generator_.forward_nograd(conditioning);
  Tensor2 w(target_in_, target_out_);
  Tensor2 b(1, target_out_);
  const int wn = target_in_ * target_out_;
  for (int i = 0; i < wn; ++i) w.data[i] = flat.data[i];
  for (int i = 0; i < target_out_; ++i) b.data[i] = flat.data[wn + i];
  return {std::move(w), std::move(b)};
}

Tensor2 HyperLayer::forward_nograd(const Tensor2& conditioning, const Tensor2& x) const {
  if (x.cols != target_in_) throw DimensionError("HyperLayer: input width mismatch");
  auto [w, b] = generate_nograd(conditioning);
  Tensor2 y = matmul(x, w);
  for (int r = 0; r < y.rows; ++r)
    for (int c = 0; c < y.cols; ++c) y.at(r, c) += b.data[c];
  return y;
}

int HyperLayer::forward(Tape& tape, int cond, int x) const {
  if (tape.value(cond).rows != 1 || tape.value(cond).cols != generator_.in_dim())
    throw DimensionError("HyperLayer: conditioning length mismatch");
  if (tape.value(x).cols != target_in_) throw DimensionError("HyperLayer: input width mismatch");
  const int flat = generator_.forward(tape, cond);
  const int wn = target_in_ * target_out_;
  const int w = tape.reshape(tape.slice(flat, 0, 1, 0, wn), target_in_, target_out_);
  const int b = tape.slice(flat, 0, 1, wn, wn + target_out_);
  return tape.add_rowvec(tape.matmul(x, w), b);
}

}  // namespace hlt
