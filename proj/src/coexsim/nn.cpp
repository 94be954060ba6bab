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

#include "coexsim/nn.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "coexsim/errors.hpp"

namespace coexsim {
namespace {

struct StackCache {
  std::vector<std::vector<double>> inputs;  // input vector fed to each layer
  std::vector<std::vector<double>> pre;     // pre-activation per layer
};

double activate(Activation act, double x) {
  return act == Activation::kRelu ? (x > 0.0 ? x : 0.0) : x;
}

double activate_grad(Activation act, double pre) {
  return act == Activation::kRelu ? (pre > 0.0 ? 1.0 : 0.0) : 1.0;
}

std::vector<double> run_stack(const std::vector<Layer>& layers,
                              std::span<const double> in, StackCache* cache) {
  std::vector<double> cur(in.begin(), in.end());
  for (const Layer& layer : layers) {
    if (cur.size() != layer.in) {
      throw ShapeError("layer expects width " + std::to_string(layer.in) +
                       ", got " + std::to_string(cur.size()));
    }
    std::vector<double> pre(layer.out);
    for (std::size_t j = 0; j < layer.out; ++j) {
      double acc = layer.b[j];
      const double* row = layer.w.data() + j * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) acc += row[i] * cur[i];
      pre[j] = acc;
    }
    if (cache != nullptr) {
      cache->inputs.push_back(std::move(cur));
      cache->pre.push_back(pre);
    }
    cur.resize(pre.size());
    for (std::size_t j = 0; j < pre.size(); ++j) {
      cur[j] = activate(layer.act, pre[j]);
    }
  }
  return cur;
}

// Backpropagates dout through one stack, accumulating parameter gradients,
// and returns the gradient with respect to the stack input.
std::vector<double> backprop_stack(const std::vector<Layer>& layers,
                                   const StackCache& cache,
                                   std::vector<double> dout,
                                   std::vector<LayerGrad>& grads) {
  for (std::size_t l = layers.size(); l-- > 0;) {
    const Layer& layer = layers[l];
    const std::vector<double>& input = cache.inputs[l];
    const std::vector<double>& pre = cache.pre[l];
    std::vector<double> din(layer.in, 0.0);
    for (std::size_t j = 0; j < layer.out; ++j) {
      double dpre = dout[j] * activate_grad(layer.act, pre[j]);
      if (dpre == 0.0) continue;
      grads[l].b[j] += dpre;
      double* gw_row = grads[l].w.data() + j * layer.in;
      const double* w_row = layer.w.data() + j * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) {
        gw_row[i] += dpre * input[i];
        din[i] += w_row[i] * dpre;
      }
    }
    dout = std::move(din);
  }
  return dout;
}

std::vector<LayerGrad> zero_grads_for(const std::vector<Layer>& layers) {
  std::vector<LayerGrad> grads;
  grads.reserve(layers.size());
  for (const Layer& layer : layers) {
    grads.push_back({std::vector<double>(layer.w.size(), 0.0),
                     std::vector<double>(layer.b.size(), 0.0)});
  }
  return grads;
}

std::vector<Layer> init_layers(const std::vector<LayerSpec>& specs,
                               std::size_t expected_input, RngStream& rng,
                               const char* what) {
  std::vector<Layer> layers;
  std::size_t width = expected_input;
  for (const LayerSpec& spec : specs) {
    if (spec.input_width == 0 || spec.output_width == 0) {
      throw ShapeError(std::string(what) + ": layer widths must be >= 1");
    }
    if (width != 0 && spec.input_width != width) {
      throw ShapeError(std::string(what) + ": adjacent layer widths disagree");
    }
    Layer layer;
    layer.in = spec.input_width;
    layer.out = spec.output_width;
    layer.act = spec.activation;
    layer.w.resize(layer.in * layer.out);
    double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double& v : layer.w) v = rng.uniform(-bound, bound);
    layer.b.assign(layer.out, 0.0);
    layers.push_back(std::move(layer));
    width = spec.output_width;
  }
  return layers;
}

void check_grad_shape(const std::vector<Layer>& layers,
                      const std::vector<LayerGrad>& grads, const char* what) {
  if (layers.size() != grads.size()) {
    throw ShapeError(std::string(what) + ": gradient layer count mismatch");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (grads[l].w.size() != layers[l].w.size() ||
        grads[l].b.size() != layers[l].b.size()) {
      throw ShapeError(std::string(what) + ": gradient shape mismatch");
    }
  }
}

void apply_to_layers(std::vector<Layer>& layers,
                     const std::vector<LayerGrad>& grads, double lr) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (std::size_t k = 0; k < layers[l].w.size(); ++k) {
      layers[l].w[k] -= lr * grads[l].w[k];
    }
    for (std::size_t k = 0; k < layers[l].b.size(); ++k) {
      layers[l].b[k] -= lr * grads[l].b[k];
    }
  }
}

const char* activation_name(Activation act) {
  return act == Activation::kRelu ? "relu" : "identity";
}

Activation activation_from(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "identity") return Activation::kIdentity;
  throw ParseError("unknown activation '" + name + "'");
}

void save_layers(std::ostream& out, const char* name,
                 const std::vector<Layer>& layers) {
  out << name << ' ' << layers.size() << '\n';
  char buf[32];
  for (const Layer& layer : layers) {
    out << "layer " << layer.in << ' ' << layer.out << ' '
        << activation_name(layer.act) << '\n';
    out << "w";
    for (double v : layer.w) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    out << "\nb";
    for (double v : layer.b) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<Layer> load_layers(std::istream& in, const char* name) {
  std::string token;
  std::size_t count = 0;
  if (!(in >> token) || token != name || !(in >> count)) {
    throw ParseError(std::string("expected '") + name + " <count>' section");
  }
  std::vector<Layer> layers(count);
  for (Layer& layer : layers) {
    std::string act;
    if (!(in >> token) || token != "layer" || !(in >> layer.in >> layer.out >> act)) {
      throw ParseError("malformed layer header");
    }
    layer.act = activation_from(act);
    layer.w.resize(layer.in * layer.out);
    layer.b.resize(layer.out);
    if (!(in >> token) || token != "w") throw ParseError("expected 'w' row");
    for (double& v : layer.w) {
      if (!(in >> v)) throw ParseError("truncated weight row");
    }
    if (!(in >> token) || token != "b") throw ParseError("expected 'b' row");
    for (double& v : layer.b) {
      if (!(in >> v)) throw ParseError("truncated bias row");
    }
  }
  return layers;
}

}  // namespace

Mlp Mlp::build(const std::vector<LayerSpec>& trunk, std::uint64_t seed) {
  if (trunk.empty()) throw ShapeError("network needs at least one layer");
  Mlp net;
  RngStream rng(seed);
  net.trunk_ = init_layers(trunk, 0, rng, "trunk");
  return net;
}

Mlp Mlp::build_dueling(const std::vector<LayerSpec>& trunk,
                       const std::vector<LayerSpec>& value_stream,
                       const std::vector<LayerSpec>& adv_stream,
                       std::uint64_t seed) {
  if (trunk.empty() || value_stream.empty() || adv_stream.empty()) {
    throw ShapeError("dueling network needs trunk, value, and advantage layers");
  }
  Mlp net;
  RngStream rng(seed);
  net.trunk_ = init_layers(trunk, 0, rng, "trunk");
  std::size_t trunk_out = net.trunk_.back().out;
  net.value_stream_ = init_layers(value_stream, trunk_out, rng, "value stream");
  net.adv_stream_ = init_layers(adv_stream, trunk_out, rng, "advantage stream");
  if (net.value_stream_.back().out != 1) {
    throw ShapeError("value stream must end in width 1");
  }
  return net;
}

Mlp Mlp::q_network(std::size_t input_width, std::size_t num_actions,
                   bool dueling, std::uint64_t seed) {
  if (input_width == 0 || num_actions == 0) {
    throw ShapeError("q_network needs input_width, num_actions >= 1");
  }
  auto relu = Activation::kRelu;
  auto ident = Activation::kIdentity;
  if (!dueling) {
    return build({{input_width, 128, relu},
                  {128, 64, relu},
                  {64, 32, relu},
                  {32, 16, relu},
                  {16, num_actions, ident}},
                 seed);
  }
  return build_dueling(
      {{input_width, 128, relu}, {128, 64, relu}, {64, 32, relu}},
      {{32, 16, relu}, {16, 1, ident}},
      {{32, 16, relu}, {16, num_actions, ident}}, seed);
}

std::size_t Mlp::input_width() const {
  if (trunk_.empty()) throw StateError("uninitialized network");
  return trunk_.front().in;
}

std::size_t Mlp::num_actions() const {
  if (trunk_.empty()) throw StateError("uninitialized network");
  return dueling() ? adv_stream_.back().out : trunk_.back().out;
}

std::vector<double> Mlp::forward(std::span<const double> state) const {
  if (trunk_.empty()) throw StateError("uninitialized network");
  if (state.size() != input_width()) {
    throw ShapeError("state width " + std::to_string(state.size()) +
                     " does not match input width " +
                     std::to_string(input_width()));
  }
  std::vector<double> trunk_out = run_stack(trunk_, state, nullptr);
  if (!dueling()) return trunk_out;

  double value = run_stack(value_stream_, trunk_out, nullptr)[0];
  std::vector<double> adv = run_stack(adv_stream_, trunk_out, nullptr);
  double mean = 0.0;
  for (double a : adv) mean += a;
  mean /= static_cast<double>(adv.size());
  for (double& a : adv) a = value + a - mean;
  return adv;
}

Gradients Mlp::backward(const std::vector<TrainSample>& batch) const {
  if (trunk_.empty()) throw StateError("uninitialized network");
  if (batch.empty()) throw PreconditionError("backward needs a nonempty batch");

  Gradients grads;
  grads.trunk = zero_grads_for(trunk_);
  grads.value_stream = zero_grads_for(value_stream_);
  grads.adv_stream = zero_grads_for(adv_stream_);

  const std::size_t actions = num_actions();
  const double inv_batch = 1.0 / static_cast<double>(batch.size());

  for (const TrainSample& sample : batch) {
    if (sample.state.size() != input_width()) {
      throw ShapeError("sample state width mismatch");
    }
    if (sample.action >= actions) {
      throw RangeError("sample action out of range");
    }

    StackCache trunk_cache;
    std::vector<double> trunk_out = run_stack(trunk_, sample.state, &trunk_cache);

    if (!dueling()) {
      double q = trunk_out[sample.action];
      double g = 2.0 * (q - sample.target) * inv_batch;
      std::vector<double> dout(actions, 0.0);
      dout[sample.action] = g;
      backprop_stack(trunk_, trunk_cache, std::move(dout), grads.trunk);
      continue;
    }

    StackCache value_cache;
    StackCache adv_cache;
    double value = run_stack(value_stream_, trunk_out, &value_cache)[0];
    std::vector<double> adv = run_stack(adv_stream_, trunk_out, &adv_cache);
    double mean = 0.0;
    for (double a : adv) mean += a;
    mean /= static_cast<double>(adv.size());
    double q = value + adv[sample.action] - mean;
    double g = 2.0 * (q - sample.target) * inv_batch;

    // Q_a = V + A_a - mean(A): dV = g, dA_j = g * (delta_aj - 1/K).
    std::vector<double> dadv(actions, -g / static_cast<double>(actions));
    dadv[sample.action] += g;
    std::vector<double> dtrunk_value = backprop_stack(
        value_stream_, value_cache, std::vector<double>{g}, grads.value_stream);
    std::vector<double> dtrunk_adv =
        backprop_stack(adv_stream_, adv_cache, std::move(dadv), grads.adv_stream);
    for (std::size_t i = 0; i < dtrunk_value.size(); ++i) {
      dtrunk_value[i] += dtrunk_adv[i];
    }
    backprop_stack(trunk_, trunk_cache, std::move(dtrunk_value), grads.trunk);
  }
  return grads;
}

void Mlp::save(std::ostream& out) const {
  out << "coexsim-mlp 1\n";
  save_layers(out, "trunk", trunk_);
  save_layers(out, "value", value_stream_);
  save_layers(out, "adv", adv_stream_);
}

Mlp Mlp::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "coexsim-mlp" || version != 1) {
    throw ParseError("not a coexsim-mlp v1 checkpoint");
  }
  Mlp net;
  net.trunk_ = load_layers(in, "trunk");
  net.value_stream_ = load_layers(in, "value");
  net.adv_stream_ = load_layers(in, "adv");
  if (net.trunk_.empty()) throw ParseError("checkpoint has no layers");
  if (net.value_stream_.empty() != net.adv_stream_.empty()) {
    throw ParseError("checkpoint has a partial dueling head");
  }
  return net;
}

void sgd_step(Mlp& net, const Gradients& grads, double learning_rate) {
  check_grad_shape(net.trunk(), grads.trunk, "trunk");
  check_grad_shape(net.value_stream(), grads.value_stream, "value stream");
  check_grad_shape(net.adv_stream(), grads.adv_stream, "advantage stream");
  apply_to_layers(net.trunk(), grads.trunk, learning_rate);
  apply_to_layers(net.value_stream(), grads.value_stream, learning_rate);
  apply_to_layers(net.adv_stream(), grads.adv_stream, learning_rate);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be >= 1");
  ring_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(t));
    return;
  }
  ring_[next_] = std::move(t);
  next_ = (next_ + 1) % capacity_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch_size,
                                             RngStream& rng) const {
  if (ring_.size() < batch_size) {
    throw PreconditionError("replay buffer holds " +
                            std::to_string(ring_.size()) +
                            " transitions, need " + std::to_string(batch_size));
  }
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    batch.push_back(ring_[rng.uniform_int(static_cast<std::uint32_t>(ring_.size()))]);
  }
  return batch;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (target_update_period == 0) {
    throw ConfigError("target_update_period must be >= 1");
  }
  if (buffer_capacity < batch_size) {
    throw ConfigError("buffer_capacity must be >= batch_size");
  }
  if (!(epsilon_end >= 0.0) || !(epsilon_start <= 1.0) ||
      !(epsilon_end <= epsilon_start)) {
    throw ConfigError("need 0 <= epsilon_end <= epsilon_start <= 1");
  }
}

}  // namespace coexsim
