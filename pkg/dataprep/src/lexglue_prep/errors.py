class DataprepError(Exception):
    pass


class UnknownSubsetError(DataprepError):
    pass


class DownloadFailureError(DataprepError):
    pass


class EntityModelUnavailableError(DataprepError):
    pass
