#include "heisflow/error.hpp"

namespace heisflow {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MismatchedBase: return "MismatchedBase";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::CharacteristicPoint: return "CharacteristicPoint";
    case ErrorCode::ZeroSpeed: return "ZeroSpeed";
    case ErrorCode::FlowEscapedDomain: return "FlowEscapedDomain";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NotHorizontal: return "NotHorizontal";
    case ErrorCode::DegenerateRuling: return "DegenerateRuling";
    case ErrorCode::ConstantRulingDirection: return "ConstantRulingDirection";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::StraightLine: return "StraightLine";
    case ErrorCode::ZeroInRange: return "ZeroInRange";
    case ErrorCode::NotRegularProfile: return "NotRegularProfile";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

} // namespace heisflow
