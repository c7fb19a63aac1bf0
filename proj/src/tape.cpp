#include "eegdec/tape.hpp"

#include "eegdec/errors.hpp"

namespace eegdec {

void Tape::backward(Var loss) {
    if (loss >= nodes_.size()) throw ShapeError("backward: unknown tape node");
    if (nodes_[loss].value.size() != 1) {
        throw ShapeError("backward requires a scalar loss, got shape " +
                         nodes_[loss].value.shape_str());
    }
    grad(loss)[0] = 1.0;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        Node& n = nodes_[i];
        if (n.grad_alloc && n.backward) {
            n.backward(*this, n.grad);
        }
    }
    clear();
}

Var param(Tape& tape, Parameter& p) {
    Parameter* pp = &p;
    return tape.record(p.value, [pp](Tape&, const Tensor& g) {
        for (std::size_t i = 0; i < g.size(); ++i) pp->grad[i] += g[i];
    });
}

}  // namespace eegdec
