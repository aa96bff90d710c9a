#include "chronoalign/vad.hpp"

#include <cmath>

#include "chronoalign/error.hpp"

namespace chronoalign {

Millis FrameProbs::frame_start(std::size_t i) const {
    return origin + static_cast<Millis>(std::llround(static_cast<double>(i) * 1000.0 / frame_rate));
}

void FrameProbs::validate() const {
    if (!(frame_rate > 0) || !std::isfinite(frame_rate)) {
        throw InputError("frame_rate must be positive");
    }
    if (origin < 0) {
        throw InputError("frame origin must be non-negative");
    }
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError("frame probability out of [0, 1] at index " + std::to_string(i));
        }
    }
}

void VadConfig::validate() const {
    if (!(offset >= 0.0 && offset <= onset && onset <= 1.0)) {
        throw ConfigError("hysteresis thresholds must satisfy 0 <= offset <= onset <= 1");
    }
    if (min_speech < 0 || min_silence < 0) {
        throw ConfigError("min_speech and min_silence must be non-negative");
    }
}

Timeline hysteresis_segment(const FrameProbs& frames, const VadConfig& cfg) {
    frames.validate();
    cfg.validate();

    std::vector<Interval> raw;
    bool in_speech = false;
    Millis seg_start = 0;
    for (std::size_t i = 0; i < frames.probs.size(); ++i) {
        const double p = frames.probs[i];
        if (!in_speech) {
            if (p >= cfg.onset) {
                in_speech = true;
                seg_start = frames.frame_start(i);
            }
        } else if (p < cfg.offset) {
            // Exit is strict: a frame sitting exactly on the offset stays in.
            raw.push_back({seg_start, frames.frame_start(i)});
            in_speech = false;
        }
    }
    if (in_speech) {
        raw.push_back({seg_start, frames.frame_start(frames.probs.size())});
    }

    // Bridge short silences first, then drop short speech.
    std::vector<Interval> bridged;
    for (const auto& iv : raw) {
        if (!bridged.empty() && iv.start - bridged.back().end < cfg.min_silence) {
            bridged.back().end = iv.end;
        } else {
            bridged.push_back(iv);
        }
    }
    std::erase_if(bridged, [&](const Interval& iv) { return iv.duration() < cfg.min_speech; });
    return Timeline(std::move(bridged));
}

std::vector<Interval> merge_windows(const Timeline& speech, Millis max_len, Millis overlap) {
    if (max_len <= 0 || overlap < 0 || overlap >= max_len) {
        throw ConfigError("window overlap must satisfy 0 <= overlap < max_len");
    }
    std::vector<Interval> windows;
    bool open = false;
    Interval group{};
    auto close = [&] {
        if (open) {
            windows.push_back(group);
            open = false;
        }
    };
    for (const auto& iv : speech.intervals()) {
        if (open && iv.end - group.start <= max_len) {
            group.end = iv.end;
            continue;
        }
        close();
        if (iv.duration() > max_len) {
            Millis start = iv.start;
            while (iv.end - start > max_len) {
                windows.push_back({start, start + max_len});
                start += max_len - overlap;
            }
            windows.push_back({start, iv.end});
        } else {
            group = iv;
            open = true;
        }
    }
    close();
    return windows;
}

}  // namespace chronoalign
