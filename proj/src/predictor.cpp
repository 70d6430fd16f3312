#include <string>

#include "pathtrack/predictor/predictor.hpp"

namespace pathtrack {

std::string_view to_string(PredictorKind kind)
{
    return kind == PredictorKind::Quadratic ? "quadratic" : "secant";
}

PredictorKind parse_predictor(std::string_view text)
{
    if (text == "secant") {
        return PredictorKind::Secant;
    }
    if (text == "quadratic") {
        return PredictorKind::Quadratic;
    }
    throw std::invalid_argument("unknown predictor '" + std::string(text) + "' (expected secant or quadratic)");
}

} // namespace pathtrack
