#include "p2pcc/traffic/block_source.h"

#include <stdexcept>

namespace p2pcc {

BlockSource::BlockSource(std::int64_t block_size_packets,
                         std::vector<ReceiverId> rotation,
                         std::optional<std::uint64_t> backlog_blocks)
    : block_size_(block_size_packets),
      rotation_(std::move(rotation)),
      backlog_blocks_(backlog_blocks) {
  if (block_size_ < 1)
    throw std::invalid_argument("block size must be at least one packet");
  if (rotation_.empty())
    throw std::invalid_argument("block source needs a receiver");
}

bool BlockSource::exhausted() const {
  return remaining_in_block_ == 0 && backlog_blocks_ &&
         next_block_id_ >= *backlog_blocks_;
}

std::vector<BlockPacket> BlockSource::NextPackets(std::int64_t quota) {
  std::vector<BlockPacket> out;
  while (quota > 0) {
    if (remaining_in_block_ == 0) {
      if (exhausted())
        break;
      current_receiver_ = rotation_[next_receiver_];
      next_receiver_ = (next_receiver_ + 1) % rotation_.size();
      current_block_id_ = next_block_id_++;
      remaining_in_block_ = block_size_;
    }
    out.push_back({current_receiver_, current_block_id_,
                   block_size_ - remaining_in_block_});
    --remaining_in_block_;
    --quota;
  }
  return out;
}

}  // namespace p2pcc
