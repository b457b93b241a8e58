#ifndef P2PCC_TRAFFIC_LOSS_BASED_WINDOW_H_
#define P2PCC_TRAFFIC_LOSS_BASED_WINDOW_H_

namespace p2pcc {

enum class LossKind {
  kTripleDuplicate,
  kTimeout,
};

enum class TcpPhase {
  kSlowStart,
  kCongestionAvoidance,
  kFastRecovery,
};

// Congestion window of a loss-based TCP sender, in packets. Drives only the
// window; sequence tracking and loss detection belong to the endpoint.
class LossBasedWindow {
 public:
  virtual ~LossBasedWindow() = default;

  // One new packet acknowledged outside fast recovery.
  virtual void OnAck() = 0;
  virtual void OnLoss(LossKind kind) = 0;
  // Called when the ack that ends fast recovery arrives.
  virtual void OnRecoveryExit() = 0;

  virtual double cwnd() const = 0;
  virtual TcpPhase phase() const = 0;
};

}  // namespace p2pcc

#endif  // P2PCC_TRAFFIC_LOSS_BASED_WINDOW_H_
