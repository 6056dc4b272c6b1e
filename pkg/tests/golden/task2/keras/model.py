"""Keras implementation of the "task2-cnn" model.

Generated from an NLDS document; layer order follows the validated
data flow. Shapes written here exclude the batch dimension.
"""

import keras
from keras import layers


def build_model():
    """Assemble the model; layers appear in data-flow order."""
    model = keras.Sequential(
        [
            keras.Input(shape=(32, 32, 3), name="input"),
            layers.Conv2D(filters=32, kernel_size=(3, 3), strides=1, padding="same", name="conv_1"),
            layers.ReLU(name="relu_1"),
            layers.Conv2D(filters=32, kernel_size=(3, 3), strides=1, padding="same", name="conv_2"),
            layers.ReLU(name="relu_2"),
            layers.MaxPooling2D(pool_size=(2, 2), padding="valid", name="pool_1"),
            layers.Conv2D(filters=64, kernel_size=(3, 3), strides=1, padding="same", name="conv_3"),
            layers.ReLU(name="relu_3"),
            layers.Conv2D(filters=64, kernel_size=(3, 3), strides=1, padding="same", name="conv_4"),
            layers.ReLU(name="relu_4"),
            layers.MaxPooling2D(pool_size=(2, 2), padding="valid", name="pool_2"),
            layers.Conv2D(filters=128, kernel_size=(3, 3), strides=1, padding="same", name="conv_5"),
            layers.ReLU(name="relu_5"),
            layers.MaxPooling2D(pool_size=(2, 2), padding="valid", name="pool_3"),
            layers.Flatten(name="flatten"),
            layers.Dense(units=10, name="dense_1"),
            layers.Softmax(name="softmax"),
        ],
        name="task2_cnn",
    )
    return model


def load_dataset():
    """Return ((x_train, y_train), (x_val, y_val)) for dataset."""
    raise NotImplementedError("wire up dataset loading for your environment")


def train(model):
    model.compile(
        optimizer=keras.optimizers.Adam(learning_rate=0.001),
        loss="categorical_crossentropy",
        metrics=["accuracy"],
    )
    (x_train, y_train), (x_val, y_val) = load_dataset()
    model.fit(
        x_train,
        y_train,
        batch_size=128,
        epochs=20,
        validation_data=(x_val, y_val),
    )
    return model


if __name__ == "__main__":
    model = build_model()
    model.summary()
    train(model)
