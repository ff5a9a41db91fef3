#include "lbsnet/error.hpp"

namespace lbsnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NotDirected: return "NotDirected";
    case ErrorCode::NotUndirected: return "NotUndirected";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::NodeNotFound: return "NodeNotFound";
    case ErrorCode::NoTriples: return "NoTriples";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::BadMoments: return "BadMoments";
    case ErrorCode::DanglingMapping: return "DanglingMapping";
    case ErrorCode::BadBinDomain: return "BadBinDomain";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lbsnet
