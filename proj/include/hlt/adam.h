#ifndef HLT_ADAM_H_
#define HLT_ADAM_H_

#include <cmath>
#include <vector>

#include "hlt/errors.h"
#include "hlt/tape.h"

namespace hlt {

// Rescales gradients in place so their global L2 norm is at most max_norm.
// Returns the pre-clip norm.
inline double clip_global_norm(const std::vector<Param*>& params, double max_norm) {
  double sq = 0.0;
  for (const Param* p : params)
    for (double g : p->grad.data) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (Param* p : params)
      for (double& g : p->grad.data) g *= s;
  }
  return norm;
}

// Adaptive-moment gradient descent with bias correction, bound to a fixed
// parameter list.
class Adam {
 public:
  Adam() = default;
  Adam(std::vector<Param*> params, double lr, double beta1 = 0.9, double beta2 = 0.999,
       double epsilon = 1e-8)
      : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(epsilon) {
    std::size_t n = 0;
    for (const Param* p : params_) n += p->value.data.size();
    m_.assign(n, 0.0);
    v_.assign(n, 0.0);
  }

  void step() {
    ++step_;
    const double bc1 = 1.0 - std::pow(beta1_, step_);
    const double bc2 = 1.0 - std::pow(beta2_, step_);
    std::size_t k = 0;
    for (Param* p : params_) {
      for (std::size_t i = 0; i < p->value.data.size(); ++i, ++k) {
        const double g = p->grad.data[i];
        if (!std::isfinite(g)) throw DivergenceError("adam: non-finite gradient in " + p->name);
        m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * g;
        v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * g * g;
        const double mhat = m_[k] / bc1;
        const double vhat = v_[k] / bc2;
        p->value.data[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
      }
    }
  }

  long long step_count() const { return step_; }
  double learning_rate() const { return lr_; }

  // Serialized moment state, for checkpoint resume.
  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }
  void restore(long long step, std::vector<double> m, std::vector<double> v) {
    if (m.size() != m_.size() || v.size() != v_.size())
      throw IoError("adam restore: moment size mismatch");
    step_ = step;
    m_ = std::move(m);
    v_ = std::move(v);
  }

 private:
  std::vector<Param*> params_;
  double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  long long step_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace hlt

#endif  // HLT_ADAM_H_
