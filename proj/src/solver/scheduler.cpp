#include "gauntlet/solver/scheduler.hpp"

namespace gauntlet::solver {

void EventScheduler::at(Millis when, Task task) {
  tasks_.push_back(std::move(task));
  queue_.push({when, seq_++, tasks_.size() - 1});
}

void EventScheduler::run(SimClock& clock) {
  while (!queue_.empty()) {
    const Entry e = queue_.top();
    queue_.pop();
    if (e.when > clock.now()) clock.set(e.when);
    if (const auto next = tasks_[e.task](clock.now())) queue_.push({*next, seq_++, e.task});
  }
}

}  // namespace gauntlet::solver
