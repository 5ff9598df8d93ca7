#include <array>
#include <string>

#include "vrcap/taskgen.hpp"

namespace vrcap {
namespace {

constexpr std::array<std::string_view, 16> kOct = {
    "Please verify whether the objects in these pictures are the same. An "
    "object is considered the same if its consistency is maintained despite "
    "variations in lighting or pose.",
    "Is <name> visible in this picture?",
    "Is <name> in this image?",
    "Do you see <name> in the photo?",
    "Is <name> present in this photograph?",
    "Can you identify if <name> is captured in this picture?",
    "Is <name> depicted in this image?",
    "Does the picture feature <name>?",
    "Can you confirm if <name> appears in this photo?",
    "Is <name> included in this shot?",
    "Is <name> shown in this image?",
    "Can you tell if <name> is part of this photograph?",
    "Is there any sign of <name> in this picture?",
    "Can you detect <name> in the photo?",
    "Is <name> captured in this image?",
    "Do you recognize <name> in this picture?",
};

constexpr std::array<std::string_view, 11> kVlt = {
    "Please provide the bounding box coordinate of the region this sentence "
    "describes: <name>.",
    "Give <name>'s bounding box in the image.",
    "Describe <name>'s position in the image.",
    "Please provide the coordinates of the bounding box for <name> in the "
    "given image.",
    "Specify the rectangular boundaries of <name> in the image.",
    "Give <name>'s position in the following image.",
    "Please provide <name>'s bounding coordinates in the image.",
    "Indicate the bounding box for <name> in the image.",
    "Show the bounding box for <name> in the picture.",
    "Specify <name>'s bounding box in the photograph.",
    "Mark <name>'s bounding box within the image.",
};

constexpr std::array<std::string_view, 26> kIct = {
    "Give a caption of the image.",
    "Give a personalized caption of this image.",
    "Provide a general caption of the image.",
    "Summarize the visual content of the image.",
    "Create a detail caption of the image.",
    "Offer a rich and clear interpretation of the image.",
    "Describe the image in detail.",
    "Render a summary of the photo.",
    "Provide a caption of the given image.",
    "Can you provide a personalized caption of this photo?",
    "Could you describe this image faithfully?",
    "Generate a detailed and accurate description of the image.",
    "Write a caption that reflects the contents and context of the image.",
    "Compose a meaningful caption that truly represents the image.",
    "Describe the image in a personalized and context-aware manner.",
    "Provide a natural-sounding caption that accurately conveys what is in "
    "the image.",
    "Craft a caption that authentically describes the scene in the image.",
    "Create a caption that captures the essence of the image.",
    "Write a caption that reflects what's visually happening in the photo.",
    "Generate a human-like description that accurately represents the image.",
    "Describe this image as if you were explaining it to a friend.",
    "Produce a relevant and truthful caption based on the image.",
    "Give a caption that matches the visual elements in the image.",
    "Summarize the visual content of this image in a natural way.",
    "Write an image-grounded caption that remains faithful to the content.",
    "Provide a descriptive sentence that corresponds closely to the image.",
};

// Caption prompts that ask for rich descriptions.
constexpr std::array<std::string_view, 7> kDetail = {
    "Describe this image in detail.",
    "Create a detail caption of the image.",
    "Offer a rich and clear interpretation of the image.",
    "Describe the image in detail.",
    "Could you describe this image faithfully?",
    "Generate a detailed and accurate description of the image.",
    "Describe this image as if you were explaining it to a friend.",
};

constexpr std::array<std::string_view, 4> kEvalCaption = {
    "Give a personalized caption of this image.",
    "Give a caption of the image.",
    "Can you provide a personalized caption for this photo?",
    "Provide a caption of the given image.",
};

constexpr std::array<std::string_view, 2> kReasoning = {
    "First output the thinking process in <think> </think> tags and then "
    "output the final answer in <answer> </answer> tags.",
    "First, observe carefully and enclose the observation process in "
    "<observe> </observe> tags and then output the final answer in <answer> "
    "</answer> tags.",
};

}  // namespace

std::span<const std::string_view> oct_templates() { return kOct; }
std::span<const std::string_view> vlt_templates() { return kVlt; }
std::span<const std::string_view> ict_templates() { return kIct; }
std::span<const std::string_view> detail_templates() { return kDetail; }
std::span<const std::string_view> eval_caption_templates() { return kEvalCaption; }
std::span<const std::string_view> reasoning_templates() { return kReasoning; }

std::string fill_template(std::string_view tmpl, std::string_view name) {
  static constexpr std::string_view kSlot = "<name>";
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = tmpl.find(kSlot, pos);
    if (hit == std::string_view::npos) break;
    out.append(tmpl.substr(pos, hit - pos));
    out.append(name);
    pos = hit + kSlot.size();
  }
  out.append(tmpl.substr(pos));
  return out;
}

}  // namespace vrcap
