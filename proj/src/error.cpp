#include "egorank/error.hpp"

namespace egorank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kBadRow: return "BadRow";
    case ErrorCode::kBadTimestamp: return "BadTimestamp";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kMissingDataset: return "MissingDataset";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kTranslatorUnavailable: return "TranslatorUnavailable";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kMissingStopList: return "MissingStopList";
    case ErrorCode::kMissingLemmaDictionary: return "MissingLemmaDictionary";
    case ErrorCode::kMissingCategory: return "MissingCategory";
    case ErrorCode::kUntrainedModel: return "UntrainedModel";
    case ErrorCode::kDependentDataset: return "DependentDataset";
    case ErrorCode::kFlaggedDocument: return "FlaggedDocument";
    case ErrorCode::kOrphanDocument: return "OrphanDocument";
    case ErrorCode::kMissingLexicon: return "MissingLexicon";
    case ErrorCode::kBadHeader: return "BadHeader";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kDuplicateWord: return "DuplicateWord";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kInertDocument: return "InertDocument";
    case ErrorCode::kEmptyBucket: return "EmptyBucket";
    case ErrorCode::kNItOutOfRange: return "NItOutOfRange";
    case ErrorCode::kRankingTooSmall: return "RankingTooSmall";
    case ErrorCode::kBadConfig: return "BadConfig";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadParams:
    case ErrorCode::kNItOutOfRange:
    case ErrorCode::kBadConfig:
    case ErrorCode::kMissingStopList:
    case ErrorCode::kMissingLemmaDictionary:
    case ErrorCode::kMissingLexicon:
    case ErrorCode::kTranslatorUnavailable:
      return true;
    default:
      return false;
  }
}

}  // namespace egorank
