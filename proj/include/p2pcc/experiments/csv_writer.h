#ifndef P2PCC_EXPERIMENTS_CSV_WRITER_H_
#define P2PCC_EXPERIMENTS_CSV_WRITER_H_

#include <filesystem>
#include <ostream>

#include "p2pcc/sim/metrics_log.h"

namespace p2pcc {

// Header row plus one row per period; values printed with 6 significant
// digits, comma separated, LF line endings.
void WriteCsv(const MetricsLog& log, std::ostream& out);

// Throws std::runtime_error naming the path on I/O failure.
void EmitCsv(const MetricsLog& log, const std::filesystem::path& path);

}  // namespace p2pcc

#endif  // P2PCC_EXPERIMENTS_CSV_WRITER_H_
