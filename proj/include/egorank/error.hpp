#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egorank {

// Every failure the library reports is an egorank::Error carrying one of
// these codes. The CLI maps codes onto exit statuses via is_config_error().
enum class ErrorCode {
  // corpus
  kEmptyFile,
  kMissingColumn,
  kBadRow,
  kBadTimestamp,
  kBadParams,
  kMissingDataset,
  kIoError,
  // textprep
  kTranslatorUnavailable,
  kPrecondition,
  // lexproc
  kMissingStopList,
  kMissingLemmaDictionary,
  // classify
  kMissingCategory,
  kUntrainedModel,
  kDependentDataset,
  kFlaggedDocument,
  kOrphanDocument,
  kMissingLexicon,
  // simdex
  kBadHeader,
  kDimMismatch,
  kDuplicateWord,
  kZeroVector,
  kEmptyCorpus,
  kInertDocument,
  // recommend
  kEmptyBucket,
  // targets
  kNItOutOfRange,
  kRankingTooSmall,
  // cli
  kBadConfig,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by the invocation rather than the data.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace egorank
