// Copyright 2026 The coexsim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COEXSIM_NN_HPP_
#define COEXSIM_NN_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coexsim/rng.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {

enum class Activation { kRelu, kIdentity };

struct LayerSpec {
  std::size_t input_width = 0;
  std::size_t output_width = 0;
  Activation activation = Activation::kRelu;
};

struct Layer {
  std::size_t in = 0;
  std::size_t out = 0;
  Activation act = Activation::kIdentity;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;  // out

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct LayerGrad {
  std::vector<double> w;
  std::vector<double> b;
};

// Mirrors the parameter shape of the Mlp it was produced from.
struct Gradients {
  std::vector<LayerGrad> trunk;
  std::vector<LayerGrad> value_stream;
  std::vector<LayerGrad> adv_stream;
};

// One training example for backward(): squared error on the Q-value of the
// selected action against a fixed target.
struct TrainSample {
  std::vector<double> state;
  std::uint32_t action = 0;
  double target = 0.0;
};

// Fully connected network. A plain net is just the trunk; a dueling net
// runs the trunk into two streams and combines them as
//   Q_a = V + A_a - mean(A),
// so constant shifts of the advantages cancel and shifts of V move every
// output equally.
//
// Value semantics throughout: copying a net yields an independent deep
// copy, which is exactly what the target-network mechanism needs.
class Mlp {
 public:
  Mlp() = default;

  // Builds a plain stack. Weights are uniform in +/-sqrt(6/(fan_in+fan_out))
  // from the given seed, biases zero.
  static Mlp build(const std::vector<LayerSpec>& trunk, std::uint64_t seed);

  // Builds a dueling net: shared trunk, then a value stream (final width 1)
  // and an advantage stream (final width = number of actions).
  static Mlp build_dueling(const std::vector<LayerSpec>& trunk,
                           const std::vector<LayerSpec>& value_stream,
                           const std::vector<LayerSpec>& adv_stream,
                           std::uint64_t seed);

  // The default Q-network: hidden widths 128/64/32/16 with rectified-linear
  // activations, identity output — five weight layers, widths decreasing
  // with depth. The dueling variant splits after the width-32 hidden layer
  // into 32->16->1 (value) and 32->16->num_actions (advantage) streams.
  static Mlp q_network(std::size_t input_width, std::size_t num_actions,
                       bool dueling, std::uint64_t seed);

  bool dueling() const { return !adv_stream_.empty(); }
  std::size_t input_width() const;
  std::size_t num_actions() const;

  // Q-value per action; throws ShapeError on input width mismatch.
  std::vector<double> forward(std::span<const double> state) const;

  // Gradients of  L = mean over batch of (Q(s,a) - target)^2  with respect
  // to every weight and bias. Non-selected actions get zero output
  // gradient. Throws PreconditionError on an empty batch.
  Gradients backward(const std::vector<TrainSample>& batch) const;

  void save(std::ostream& out) const;
  static Mlp load(std::istream& in);

  // Mutable access for tests and the optimizer.
  std::vector<Layer>& trunk() { return trunk_; }
  const std::vector<Layer>& trunk() const { return trunk_; }
  std::vector<Layer>& value_stream() { return value_stream_; }
  const std::vector<Layer>& value_stream() const { return value_stream_; }
  std::vector<Layer>& adv_stream() { return adv_stream_; }
  const std::vector<Layer>& adv_stream() const { return adv_stream_; }

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  std::vector<Layer> trunk_;
  std::vector<Layer> value_stream_;
  std::vector<Layer> adv_stream_;
};

// p <- p - learning_rate * g for every parameter; shapes must match.
void sgd_step(Mlp& net, const Gradients& grads, double learning_rate);

// Exact deep copy; later updates to the online net leave the copy alone.
inline Mlp clone_to_target(const Mlp& net) { return net; }

// One environment transition stored for replay.
struct Transition {
  std::vector<double> state;
  std::uint32_t action = 0;
  double reward = 0.0;
  std::vector<double> next_state;  // empty when terminal
  bool terminal = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Fixed-capacity ring; push overwrites the oldest entry once full, sample
// draws uniformly with replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return ring_.size(); }
  const Transition& at(std::size_t i) const { return ring_.at(i); }

  void push(Transition t);

  // Requires size() >= batch_size; throws PreconditionError otherwise.
  std::vector<Transition> sample(std::size_t batch_size, RngStream& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Transition> ring_;
  std::size_t next_ = 0;
};

struct TrainConfig {
  double learning_rate = 0.05;  // network rate; the tabular rate lives in Hyperparams
  std::uint32_t batch_size = 32;
  std::uint32_t target_update_period = 200;
  std::uint32_t buffer_capacity = 10000;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::uint32_t epsilon_decay_steps = 0;  // 0: linear over the first half of training

  void validate() const;  // throws ConfigError
};

}  // namespace coexsim

#endif  // COEXSIM_NN_HPP_
