#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eegdec/tensor.hpp"

namespace eegdec {

// Trainable tensor plus its gradient and Adam moment accumulators.
struct Parameter {
    std::string name;
    Tensor value;
    Tensor grad;
    Tensor adam_m;
    Tensor adam_v;
    std::int64_t step_count = 0;

    Parameter() = default;
    explicit Parameter(Tensor init, std::string param_name = "")
        : name(std::move(param_name)),
          value(std::move(init)),
          grad(value.shape()),
          adam_m(value.shape()),
          adam_v(value.shape()) {}

    void zero_grad() { grad.fill(0.0); }
    std::size_t size() const { return value.size(); }
};

using Var = std::size_t;

// Linear record of forward operations. Ops append nodes in execution order;
// backward replays the records in reverse, which is a valid topological
// order. One tape, one thread.
class Tape {
public:
    using BackwardFn = std::function<void(Tape&, const Tensor& out_grad)>;

    Var leaf(Tensor value) { return record(std::move(value), nullptr); }

    Var record(Tensor value, BackwardFn backward) {
        nodes_.push_back(Node{std::move(value), Tensor(), false,
                              grad_enabled_ ? std::move(backward) : nullptr});
        return nodes_.size() - 1;
    }

    const Tensor& value(Var v) const { return nodes_[v].value; }

    // adjoint buffer, allocated to zeros on first touch
    Tensor& grad(Var v) {
        Node& n = nodes_[v];
        if (!n.grad_alloc) {
            n.grad = Tensor(n.value.shape());
            n.grad_alloc = true;
        }
        return n.grad;
    }

    bool has_grad(Var v) const { return nodes_[v].grad_alloc; }

    // Seeds d(loss)/d(loss)=1 and replays backward rules in reverse recorded
    // order. Parameter gradients accumulate into Parameter::grad. The tape is
    // cleared afterwards.
    void backward(Var loss);

    void clear() { nodes_.clear(); }
    std::size_t size() const { return nodes_.size(); }

    void set_grad_enabled(bool enabled) { grad_enabled_ = enabled; }
    bool grad_enabled() const { return grad_enabled_; }

private:
    struct Node {
        Tensor value;
        Tensor grad;
        bool grad_alloc = false;
        BackwardFn backward;
    };
    std::vector<Node> nodes_;
    bool grad_enabled_ = true;
};

// Puts a parameter's current value on the tape; backward accumulates into
// Parameter::grad.
Var param(Tape& tape, Parameter& p);

}  // namespace eegdec
