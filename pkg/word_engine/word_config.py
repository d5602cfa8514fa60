# word engine settings

# extend_to_letter searches extensions up to extension_cap_factor * |S| letters
extension_cap_factor = 4


def get_extension_cap_factor() -> int:
    return extension_cap_factor
