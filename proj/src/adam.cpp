#include "eegdec/adam.hpp"

#include <cmath>

namespace eegdec {

void adam_step(const std::vector<Parameter*>& params, const AdamConfig& cfg) {
    for (Parameter* p : params) {
        p->step_count += 1;
        const double t = static_cast<double>(p->step_count);
        const double m_corr = 1.0 - std::pow(cfg.beta1, t);
        const double v_corr = 1.0 - std::pow(cfg.beta2, t);
        for (std::size_t i = 0; i < p->size(); ++i) {
            const double g = p->grad[i];
            p->adam_m[i] = cfg.beta1 * p->adam_m[i] + (1.0 - cfg.beta1) * g;
            p->adam_v[i] = cfg.beta2 * p->adam_v[i] + (1.0 - cfg.beta2) * g * g;
            const double m_hat = p->adam_m[i] / m_corr;
            const double v_hat = p->adam_v[i] / v_corr;
            p->value[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
        p->zero_grad();
    }
}

}  // namespace eegdec
