#ifndef P2PCC_TRAFFIC_BLOCK_SOURCE_H_
#define P2PCC_TRAFFIC_BLOCK_SOURCE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "p2pcc/control/controller_params.h"

namespace p2pcc {

struct BlockPacket {
  ReceiverId receiver;
  std::uint64_t block_id = 0;
  std::int64_t index_in_block = 0;
};

// Sequential block producer standing in for the block scheduler: every packet
// of a block is emitted before the next block starts, and consecutive blocks
// go to receivers in round-robin order.
class BlockSource {
 public:
  // `backlog_blocks` empty means an endless supply.
  BlockSource(std::int64_t block_size_packets,
              std::vector<ReceiverId> rotation,
              std::optional<std::uint64_t> backlog_blocks = std::nullopt);

  // Up to `quota` packets continuing the current block. Fewer only when the
  // backlog runs out.
  std::vector<BlockPacket> NextPackets(std::int64_t quota);

  bool exhausted() const;
  std::uint64_t blocks_started() const { return next_block_id_; }
  std::int64_t block_size() const { return block_size_; }

 private:
  std::int64_t block_size_;
  std::vector<ReceiverId> rotation_;
  std::optional<std::uint64_t> backlog_blocks_;
  std::size_t next_receiver_ = 0;
  std::uint64_t next_block_id_ = 0;
  // Packets left in the block being transmitted; 0 means none open.
  std::int64_t remaining_in_block_ = 0;
  ReceiverId current_receiver_;
  std::uint64_t current_block_id_ = 0;
};

}  // namespace p2pcc

#endif  // P2PCC_TRAFFIC_BLOCK_SOURCE_H_
